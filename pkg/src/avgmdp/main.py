"""Main entry point for avgmdp CLI."""

import sys

from avgmdp.cli import CLI


def main() -> None:
    """Run the CLI and exit with its status."""
    cli = CLI()
    code = cli.run()
    if code:
        sys.exit(code)


if __name__ == "__main__":
    main()
