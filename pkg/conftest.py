import pytest

from nonres.config import NonresSettings
from nonres.schemas.character import CharacterLabel
from nonres.services.arithmetic_service import ArithmeticService
from nonres.services.character_service import CharacterService
from nonres.services.zero_service import ZeroService

# Conrey labels of the quadratic characters used throughout
QUAD_3 = "3.2"
QUAD_4 = "4.3"
QUAD_5 = "5.4"
QUAD_7 = "7.6"
INDUCED_9 = "9.8"  # mod 9, induced by 3.2


@pytest.fixture(scope="session")
def settings():
    return NonresSettings(MAX_WORKERS=1, LOG_LEVEL="WARNING")


@pytest.fixture(scope="session")
def characters(settings):
    return CharacterService(settings)


@pytest.fixture(scope="session")
def tables(settings):
    """Sieve tables large enough for x = 10^4 with y = e^(pi/4)."""
    return ArithmeticService(settings).build_tables(60_000)


@pytest.fixture(scope="session")
def zero_service(settings):
    return ZeroService(settings)


@pytest.fixture(scope="session")
def archive_mod3(zero_service, characters):
    """Zeros of the quadratic character mod 3 with |gamma| <= 120."""
    return zero_service.build_archive([characters.get_character(QUAD_3)], 120.0)


@pytest.fixture(scope="session")
def archive_mod5(zero_service, characters):
    return zero_service.build_archive([characters.get_character(QUAD_5)], 30.0)


@pytest.fixture
def label():
    return CharacterLabel.parse
