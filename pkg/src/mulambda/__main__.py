import sys

from mulambda.cli import main

sys.exit(main())
