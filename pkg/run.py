import sys

from nonres.main import main


if __name__ == "__main__":
    sys.exit(main())
