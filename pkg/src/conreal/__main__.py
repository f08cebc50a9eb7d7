"""Entry point for running conreal as a module: python -m conreal"""
from conreal import main

if __name__ == "__main__":
    main()
