"""Text formats read and written by the command line."""
