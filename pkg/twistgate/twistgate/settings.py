import math
import os

from dotenv import load_dotenv

load_dotenv()

SECRET_KEY = os.getenv('SECRET_KEY', 'twistgate-local-only')

BASE_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))

DEBUG = False

INSTALLED_APPS = [
    'rest_framework',
    'gates',
]

# База данных не используется: все вычисления в памяти.
DATABASES = {}

LANGUAGE_CODE = 'ru-RU'

TIME_ZONE = 'UTC'

USE_I18N = True

USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

REST_FRAMEWORK = {
    'UNAUTHENTICATED_USER': None,
    'COERCE_DECIMAL_TO_STRING': False,
}

LOG_LEVEL = os.getenv('TWISTGATE_LOG_LEVEL', 'WARNING').upper()

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {name} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
        },
    },
    'loggers': {
        'gates': {
            'handlers': ['console'],
            'level': LOG_LEVEL,
            'propagate': False,
        },
    },
}

# Базовый seed можно задать через окружение или .env
DEFAULT_SEED = os.getenv('TWISTGATE_SEED', '0')

# Дифференциальная эволюция
DE_POPULATION = 32
DE_MUTATION = (0.5, 1.0)
DE_RECOMBINATION = 0.7
DE_MAX_GENERATIONS = 300
DE_TARGET_LOSS = 1e-12

# Полировка симплексом Нелдера-Мида
POLISH_XATOL = 1e-12
POLISH_FATOL = 1e-15
POLISH_MAX_ITERATIONS = 600
POLISH_STARTS = 4

# Решётка предварительного просмотра: шаг по θ много меньше периода π
LATTICE_THETA_STEP = math.pi / 16
LATTICE_LENGTH_STEP = 1 / 32
# Сколько лучших минимумов решётки уточнять и сколько раз сжимать шаблон
LATTICE_CANDIDATES = 64
REFINE_ITERATIONS = 24

# Сетка целевых вентилей
DESK_GRID = (9, 17, 5)
FULL_GRID = (33, 65, 17)
SCAN_LENGTHS = (1.0, 2.0, 3.0)

# Гистограмма точностей
HISTOGRAM_BINS = 50
HISTOGRAM_MIN = 0.9
NEAR_UNITY_THRESHOLD = 0.99

# Вывод команд
DISPLAY_DIGITS = 9
REPORT_SCHEMA_VERSION = 1

# Ограничения по умолчанию для fit и sweep (θ_max = 20π: десять оборотов)
DEFAULT_THETA_MAX = '20pi'
DEFAULT_LENGTH_MAX = '3'
