"""Set expression language and command-line interface."""
