"""
popcheck - Entry Point

Runs the command-line front end and exits with its status code:
0 when the inequality holds, 2 for a violation, 1 for errors.

Usage:
    python . eval --ineq popoviciu --fn power:2 --triple 0 0 3
    python . search --ineq al-gap --fn gamma --region 1.35 1.5
"""

import sys

from src.cli import main

sys.exit(main())
