"""Property suites and the selftest harness."""
