"""Property laboratory: law checks, probes, generators and fixture suites."""
