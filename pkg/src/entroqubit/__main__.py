import sys

from entroqubit.cli import main

sys.exit(main())
