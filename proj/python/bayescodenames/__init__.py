# Copyright 2026 The bayescodenames Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Bayesian Codenames agents: game engine, level-0 and Bayesian agents, harness."""

import json

from ._core import (
    CodenamesError,
    Game,
    IllegalAction,
    Library,
    level0_clue,
    level0_guess,
    play_game,
    run_config,
    turn_utility,
)
from ._core import _Service

__all__ = [
    "CodenamesError",
    "Game",
    "IllegalAction",
    "Library",
    "Service",
    "level0_clue",
    "level0_guess",
    "play_game",
    "run_config",
    "turn_utility",
]


class Service:
    """In-process play service; same routes and bodies as the HTTP server."""

    def __init__(self, library, idle_timeout=3600):
        self._impl = _Service(library, idle_timeout)

    def request(self, method, path, body=None):
        payload = "" if body is None else json.dumps(body)
        status, text = self._impl.handle(method, path, payload)
        return status, json.loads(text) if text else None

    def session_count(self):
        return self._impl.session_count()
