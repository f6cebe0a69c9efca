import sys

from fowl.main import main

sys.exit(main())
