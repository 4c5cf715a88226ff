# Test package for the cascade lab
