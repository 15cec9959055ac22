"""Run the full verification suite; exit status 0 when every check passes."""
import sys

from scvertex.cli.main import dispatch

if __name__ == "__main__":
    sys.exit(dispatch(["check", "--suite", "paper", *sys.argv[1:]]))
