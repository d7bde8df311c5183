"""Integration tests for bot handlers through Dispatcher."""
