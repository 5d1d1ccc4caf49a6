import sys

from shruti.cli import main

sys.exit(main())
