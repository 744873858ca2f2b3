"""Command-line front end and the JSON interchange format."""
