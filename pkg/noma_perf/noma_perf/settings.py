import os

# Build paths inside the project like this: os.path.join(BASE_DIR, ...)
BASE_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))

# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.getenv('DJ_SECRET_KEY', default='n0ma-p3rf-l0cal-0nly-k3y')

DEBUG = False

ALLOWED_HOSTS = []

# Application definition

INSTALLED_APPS = [
    'rest_framework',
    'core',
    'special',
    'analytic',
    'montecarlo',
    'cli',
]

# Numerical tool, nothing is stored
DATABASES = {}

# Internationalization

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True

# Logging: stderr only, result files never carry timing information

NOMA_LOG_LEVEL = os.getenv('NOMA_LOG_LEVEL', default='WARNING').upper()

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'plain': {
            'format': '{asctime} {levelname} {name} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'stream': 'ext://sys.stderr',
            'formatter': 'plain',
        },
    },
    'loggers': {
        app: {
            'handlers': ['console'],
            'level': NOMA_LOG_LEVEL,
            'propagate': False,
        }
        for app in ('core', 'special', 'analytic', 'montecarlo', 'cli')
    },
}

# Simulation

NOMA_THREADS = int(os.getenv('NOMA_THREADS', default=os.cpu_count() or 1))

NOMA_MC_TRIALS = 100_000

NOMA_MC_BLOCK = 4096

NOMA_SEED = 42

# System parameters used when a key is absent from the config file
NOMA_DEFAULT_CONFIG = {
    'n_tx': 2,
    'n_rx': 3,
    'n_streams': 2,
    'group_cap': 3,
    'alloc_eps': 0.5,
    'corr_coeff': 0.5,
    'snr_db': 60.0,
    'radius_m': 30.0,
    'intensity_per_m2': 1e-3,
    'rate_bps_hz': 2.0,
    'path_loss_exp': 3.0,
    'path_loss_ref': 1.0,
    'fading_power': 1.0,
    'noise_power': 1.0,
}

# Thresholds of the validate report
NOMA_VALIDATION = {
    'confidence': 0.99,
    'relative_gap': 0.05,
    'relative_gap_floor': 1e-4,
    'snr_db': (50.0, 55.0, 60.0),
    'ks_samples': 100_000,
    'ks_p_value': 0.01,
    'chi2_p_value': 0.01,
    'identity_limit': 20,
    'series_rel_tol': 1e-8,
    'series_x_limit': 10.0,
}
