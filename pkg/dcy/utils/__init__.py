"""Small shared helpers for domino-cycles."""
