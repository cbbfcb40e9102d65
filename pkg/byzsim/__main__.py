import sys

from byzsim.main import main

if __name__ == "__main__":
    sys.exit(main())
