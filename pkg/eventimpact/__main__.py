import sys

from eventimpact.cli import main

sys.exit(main())
