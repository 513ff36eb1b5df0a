from __future__ import annotations

import os
from typing import Iterable

import pandas as pd

HISTOGRAM_COLUMNS = ["k", "count", "frequency"]


def _ensure_parent(output_path: str) -> None:
    parent = os.path.dirname(output_path)
    if parent:
        os.makedirs(parent, exist_ok=True)


def write_output_csv(df: pd.DataFrame, output_path: str) -> None:
    _ensure_parent(output_path)
    df.to_csv(output_path, index=False)


def write_text_lines(lines: Iterable[str], output_path: str) -> None:
    _ensure_parent(output_path)
    with open(output_path, "w", encoding="ascii", newline="\n") as f:
        for line in lines:
            f.write(f"{line}\n")


def write_histogram_csv(hist, output_path: str) -> None:
    write_output_csv(hist.to_frame()[HISTOGRAM_COLUMNS], output_path)
