# Package init