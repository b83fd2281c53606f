from __future__ import annotations

from bernstirl.cli import main

if __name__ == "__main__":
    raise SystemExit(main())
