#!/usr/bin/env python3
"""Entry point for running anticode from a checkout"""

import sys
from pathlib import Path

# Add the script directory to path to ensure imports work
sys.path.insert(0, str(Path(__file__).parent))

try:
    from cli import main

    if __name__ == "__main__":
        sys.exit(main())
except ImportError as e:
    print(f"Error: {e}", file=sys.stderr)
    print("\nPlease install the dependencies first:", file=sys.stderr)
    print("  pip install -r requirements.txt", file=sys.stderr)
    print("  python run.py [command]", file=sys.stderr)
    sys.exit(1)
