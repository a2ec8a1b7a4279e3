""" The purpose of this file is to allow the convenient "python3 -m geocesaro" invocation syntax. """
import sys

from geocesaro.cli import main

if __name__ == '__main__':
    sys.exit(main())
