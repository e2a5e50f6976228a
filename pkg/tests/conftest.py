def pytest_configure(config):
    config.addinivalue_line("markers", "slow: seeded sweeps over 10^4 to 10^5 points; deselect with -m 'not slow'")
