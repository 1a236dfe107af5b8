import sys

from src.bench.cli import main


if __name__ == "__main__":
    sys.exit(main())
