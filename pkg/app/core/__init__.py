"""Core application utilities and configurations."""
