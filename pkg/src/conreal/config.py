"""Configuration loading and constants"""
import os
import logging
import yaml
from pathlib import Path
from dotenv import load_dotenv

logger = logging.getLogger(__name__)

# Project root (../..)
PROJECT_ROOT = Path(__file__).resolve().parents[2]

DEFAULTS = {
    'search': {'cap': 65536, 'depth': 64},
    'precision': {'default': 30},
    'codes': {'depth': 8, 'kmax': 8},
    'lift': {'slack_bits': 2},
}


def _merge(defaults, loaded):
    merged = {}
    for key, value in defaults.items():
        override = loaded.get(key) if isinstance(loaded, dict) else None
        if isinstance(value, dict):
            merged[key] = _merge(value, override or {})
        else:
            merged[key] = value if override is None else override
    return merged


def _positive_int(name, value):
    try:
        number = int(value)
    except (TypeError, ValueError):
        raise SystemExit(f"{name} must be an integer, got {value!r}")
    if number <= 0:
        raise SystemExit(f"{name} must be positive, got {number}")
    return number


# Load configuration
try:
    with open(PROJECT_ROOT / 'config.yml', 'r', encoding='utf-8') as file:
        CONFIG = _merge(DEFAULTS, yaml.safe_load(file) or {})
except FileNotFoundError:
    logger.debug('config.yml not found, using defaults')
    CONFIG = _merge(DEFAULTS, {})
except yaml.YAMLError as e:
    raise SystemExit(f"config.yml is invalid: {e}")

# Load environment variables
load_dotenv(PROJECT_ROOT / '.env')

# Environment
LOG_LEVEL = os.getenv('CONREAL_LOG', 'INFO').upper()
GLOBAL_CAP = _positive_int('CONREAL_CAP', os.getenv('CONREAL_CAP', CONFIG['search']['cap']))
DEPTH_CAP = _positive_int('search.depth', CONFIG['search']['depth'])
DEFAULT_PREC = _positive_int('CONREAL_PREC', os.getenv('CONREAL_PREC', CONFIG['precision']['default']))
CODE_DEPTH = _positive_int('codes.depth', CONFIG['codes']['depth'])
CODE_KMAX = _positive_int('codes.kmax', CONFIG['codes']['kmax'])
LIFT_SLACK_BITS = _positive_int('lift.slack_bits', CONFIG['lift']['slack_bits'])

# Configure logging
logging.basicConfig(format='[%(levelname)s:%(name)s] %(message)s', level=logging.WARNING)  # Silence third-party libraries
logging.getLogger('conreal').setLevel(getattr(logging, LOG_LEVEL, logging.INFO))
