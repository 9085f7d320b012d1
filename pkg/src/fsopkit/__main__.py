"""
fsopkit CLI Entry Point
"""
from fsopkit.cli.main import main

if __name__ == "__main__":
    main()
