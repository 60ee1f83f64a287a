import sys

from cryolink.cli import main

sys.exit(main())
