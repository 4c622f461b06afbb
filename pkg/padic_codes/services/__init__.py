"""Command drivers that turn calculations into reports."""
