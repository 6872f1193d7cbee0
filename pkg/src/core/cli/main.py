#!/usr/bin/env python3
"""
qnetctl CLI - Main Entry Point

This module provides the main entry point for the qnetctl CLI.
"""

from src.core.cli.app import app


def main():
    """Main entry point for qnetctl CLI."""
    app()


if __name__ == '__main__':
    main()
