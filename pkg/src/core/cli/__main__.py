"""Entry point for qnetctl CLI."""
from src.core.cli.app import app

if __name__ == "__main__":
    app()
