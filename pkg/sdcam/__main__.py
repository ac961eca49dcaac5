import sys

from sdcam.cli import main

sys.exit(main())
