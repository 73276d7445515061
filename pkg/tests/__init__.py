"""Test suite for Gmail to NotebookLM converter."""
