"""Parsers and entrypoint for the command-line interface."""
