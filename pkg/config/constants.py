"""
Application Constants
"""

# Word problem
DEFAULT_WORD_CAP = 40

# Enumeration oracle
DEFAULT_ENUM_RADIUS = 12
DEFAULT_ENUM_SIZE_CAP = 20000
REPRESENTATION_DECIMALS = 6

# Rigidity searches
DEFAULT_SEARCH_RADIUS = 8
DEFAULT_DESCENT_CAP = 10000
# Element orders: None derives the power bound from the finite-type catalog
DEFAULT_ORDER_PROBE = None
UNIT_SPECTRUM_TOLERANCE = 1e-6

# Supported presentation formats
SUPPORTED_PRESENTATION_FORMATS = ['.cox', '.json']
INFINITY_FILE_CODE = 0

# Output formats
OUTPUT_FORMATS = ['text', 'json']
EXPORT_FORMATS = ['dot', 'json', 'csv']

# CLI exit codes
EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT_ERROR = 2
EXIT_CAP_EXHAUSTED = 3

# File paths
SETTINGS_FILE = "config/app_settings.json"

# Application info
APP_NAME = "coxrig"
APP_VERSION = "1.0.0"
APP_DESCRIPTION = "Word problems, Davis complexes and reflection rigidity for Coxeter systems"
