"""
Model for storing and recalling the user defaults of the command line.
"""

import json
import os

from src.app_data import AppData


class Settings:

    DEFAULT_TOLERANCE = 1e-8
    DEFAULT_HORIZON = 500
    DEFAULT_DEBUG_ASSERTIONS = True
    DEFAULT_PHI_MAX = 8
    DEFAULT_WORKERS = 4

    def __init__(self, filename=None):
        if filename is None:
            filename = os.path.join(AppData.USER_FOLDER, f"{AppData.EXE_NAME}.json")
        self._filename = filename

    ###########
    # Private #
    ###########

    def _read_settings(self):
        d = {}
        try:
            with open(self._filename, "r", encoding="utf-8") as fp:
                d = json.load(fp)
        except FileNotFoundError:
            pass
        except json.decoder.JSONDecodeError:
            pass
        if not isinstance(d, dict):
            d = {}
        return d

    def _write_settings(self, settings):
        folder = os.path.dirname(self._filename)
        if folder != "" and not os.path.isdir(folder):
            os.makedirs(folder)
        with open(self._filename, "w", encoding="utf-8") as fp:
            json.dump(settings, fp, indent=2)

    def _get_property(self, main_key, sub_key, default=None):
        d = self._read_settings()
        section = d.get(main_key, {})
        if not isinstance(section, dict):
            return default
        return section.get(sub_key, default)

    def _store_property(self, main_key, sub_key, value):
        d = self._read_settings()
        if not isinstance(d.get(main_key), dict):
            d[main_key] = {}
        d[main_key][sub_key] = value
        self._write_settings(d)

    ##########
    # Public #
    ##########

    def get_filename(self):
        return self._filename

    #######################
    # Simulation settings #
    #######################

    def get_tolerance(self):
        return self._get_property("simulation", "tolerance", self.DEFAULT_TOLERANCE)

    def store_tolerance(self, tolerance):
        self._store_property("simulation", "tolerance", tolerance)

    def get_horizon(self):
        return self._get_property("simulation", "horizon", self.DEFAULT_HORIZON)

    def store_horizon(self, horizon):
        self._store_property("simulation", "horizon", horizon)

    #####################
    # Analysis settings #
    #####################

    def get_debug_assertions(self):
        return self._get_property("analysis", "debug_assertions", self.DEFAULT_DEBUG_ASSERTIONS)

    def store_debug_assertions(self, enabled):
        self._store_property("analysis", "debug_assertions", enabled)

    def get_phi_max(self):
        return self._get_property("analysis", "phi_max", self.DEFAULT_PHI_MAX)

    def store_phi_max(self, phi_max):
        self._store_property("analysis", "phi_max", phi_max)

    ##################
    # Sweep settings #
    ##################

    def get_workers(self):
        return self._get_property("sweep", "workers", self.DEFAULT_WORKERS)

    def store_workers(self, workers):
        self._store_property("sweep", "workers", workers)


if __name__ == "__main__":

    from tests.unit_tests.test_models.test_settings import TestSettings

    TestSettings().run(True)
