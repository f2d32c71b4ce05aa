"""Command-line harness: model files, the shipped corpus, verification
reports for the main integer identities, and structured dumps."""
