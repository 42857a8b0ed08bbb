"""
Configuration Management
Handles different environment configurations
"""

import os
import sys
import logging

import colorlog
from dotenv import load_dotenv

load_dotenv()


class Config:
    """Base configuration"""

    # Logging
    LOG_LEVEL = os.getenv('LOG_LEVEL', 'INFO')
    LOG_FORMAT = os.getenv(
        'LOG_FORMAT',
        '%(log_color)s%(levelname)-8s%(reset)s %(name)s: %(message)s'
    )

    # Reports
    ARTIFACT_VERSION = "1.0.0"
    GRADEDROOT_FORMAT = os.getenv('GRADEDROOT_FORMAT', 'ascii')
    SVG_HASHSALT = os.getenv('SVG_HASHSALT', 'knot-torsion')

    # Acceptance battery
    SELFTEST_MAX_N = int(os.getenv('SELFTEST_MAX_N', 12))
    RANDOM_SEED = int(os.getenv('RANDOM_SEED', 20240511))
    SNF_RANDOM_TRIALS = int(os.getenv('SNF_RANDOM_TRIALS', 200))
    MOVE_RANDOM_TRIALS = int(os.getenv('MOVE_RANDOM_TRIALS', 100))
    KUNNETH_PAIRS = int(os.getenv('KUNNETH_PAIRS', 20))

    # Batch evaluation
    BATCH_JOBS = int(os.getenv('BATCH_JOBS', 1))

    # Homology cache
    CACHE_ENABLED = os.getenv('CACHE_ENABLED', 'true').lower() == 'true'
    CACHE_MAX_ENTRIES = int(os.getenv('CACHE_MAX_ENTRIES', 512))


class DevelopmentConfig(Config):
    """Development configuration"""
    LOG_LEVEL = 'DEBUG'


class TestingConfig(Config):
    """Testing configuration"""
    LOG_LEVEL = 'DEBUG'

    # Every computation goes through the full homology path
    CACHE_ENABLED = False


class ProductionConfig(Config):
    """Production configuration"""
    LOG_LEVEL = os.getenv('LOG_LEVEL', 'WARNING')


# Configuration dictionary
config = {
    'development': DevelopmentConfig,
    'testing': TestingConfig,
    'production': ProductionConfig,
    'default': ProductionConfig
}


def get_config():
    """Get configuration based on environment"""
    env = os.getenv('KNOT_TORSION_ENV', 'production')
    return config.get(env, config['default'])


def configure_logging(cfg=None, level=None):
    """
    Route all diagnostics to the error stream through colorlog

    Args:
        cfg: Configuration class (defaults to get_config())
        level: Explicit level name overriding cfg.LOG_LEVEL
    """
    cfg = cfg or get_config()
    handler = colorlog.StreamHandler(sys.stderr)
    handler.setFormatter(colorlog.ColoredFormatter(cfg.LOG_FORMAT))

    root = logging.getLogger()
    for existing in list(root.handlers):
        root.removeHandler(existing)
    root.addHandler(handler)
    root.setLevel(level or cfg.LOG_LEVEL)
