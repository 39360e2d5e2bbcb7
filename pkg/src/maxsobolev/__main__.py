import sys

from maxsobolev.cli.main import main

sys.exit(main())
