import sys

from msldpc_core.cli import main

sys.exit(main())
