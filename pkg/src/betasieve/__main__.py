"""Allow `python -m betasieve`."""

from .cli import main

if __name__ == "__main__":
    main()
