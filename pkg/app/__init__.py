"""Command-line front end for algext."""
