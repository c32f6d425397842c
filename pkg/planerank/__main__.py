import sys

from planerank.main import main

sys.exit(main())
