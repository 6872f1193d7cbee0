"""qnetctl CLI Commands."""
