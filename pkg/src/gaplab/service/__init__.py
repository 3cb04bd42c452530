"""HTTP service wrapping the census laboratory."""
