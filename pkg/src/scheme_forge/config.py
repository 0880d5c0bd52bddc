'''
define the runtime settings shared by the library and the workbench
'''

import os

from pydantic import BaseModel
from pydantic import ConfigDict
from pydantic import Field

from .exceptions import ParameterError

ENV_THREADS = 'SCHEME_FORGE_THREADS'


class Settings(BaseModel):
    '''
    caps and worker counts

    the caps bound table memory (field order), bitset oracle time (dense points),
    partition enumeration (amorphy classes) and backtracking (isomorphism points)
    '''

    model_config = ConfigDict(frozen=True)

    threads: int = Field(default=1, ge=1)
    field_order_cap: int = 1 << 22
    dense_point_cap: int = 4096
    amorphy_class_cap: int = 12
    isomorphism_point_cap: int = 40
    geometry_point_cap: int = 1 << 13


def get_settings() -> Settings:
    '''
    build the settings from the environment
    '''

    cpus = os.cpu_count() or 1
    raw = os.environ.get(ENV_THREADS)

    if raw is None or raw.strip() == '':
        return Settings(threads=cpus)

    try:
        requested = int(raw)
    except ValueError as e:
        raise ParameterError(f'{ENV_THREADS} must be an integer, got {raw!r}') from e

    if requested < 1:
        raise ParameterError(f'{ENV_THREADS} must be at least 1, got {requested}')

    return Settings(threads=min(requested, cpus))
