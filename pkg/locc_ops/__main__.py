"""
Enables:  python -m locc_ops <command>

Same entry point as the `locc-ops` console script, for environments
where the script directory is not on PATH.
"""
from locc_ops.cli import main

if __name__ == "__main__":
    main()
