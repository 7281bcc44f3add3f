"""Settings for fdre tests."""

# Define the name of the test database
TEST_DB_NAME = 'test_db'

# Define the size of the test problems and networks
TEST_D = 2
TEST_N = 200
TEST_WIDTHS = [TEST_D, 8, 8, 1]

# Define the master seed for tests
TEST_SEED = 13
