import json
import os
from datetime import datetime

DEFAULT_CONFIG = {
    "enumerationLimit": 24,
    "hullDimLimit": 15,
    "separationLimit": 100000,
    "trials": 200,
    "seed": 0,
    "logFile": "logs/totalMatchingLog.txt",
    "verbose": False,
}

# set once by configure_log; None means "do not write a log file"
_logFile = None
_verbose = False


def load_config(filename):
    """Load the JSON config on top of the defaults. A missing file just means defaults."""
    config = dict(DEFAULT_CONFIG)
    if filename is not None and os.path.exists(filename):
        with open(filename, "r") as file:
            loaded = json.load(file)
        config.update({key: value for key, value in loaded.items() if key in DEFAULT_CONFIG})
    return config


def configure_log(logFile, verbose=False):
    global _logFile, _verbose
    _logFile = logFile
    _verbose = verbose
    if _logFile:
        directory = os.path.dirname(_logFile)
        if directory:
            os.makedirs(directory, exist_ok=True)


def log(msg, stdout=False):
    # record a timestamp and prepend to the message
    formatted_time = datetime.now().strftime("%H:%M:%S")
    msg = f"{formatted_time} {msg}"
    if stdout or _verbose:
        print(msg)
    if _logFile:
        with open(_logFile, "a") as file:
            file.write(f"{msg}\n")


def check_limit(what, value, limit, error=None):
    """Raise (error or LimitExceededError) when value is above limit."""
    if value > limit:
        log(f"DEBUG LIMITS: {what} = {value} exceeds the limit {limit}")
        raise (error or LimitExceededError)(f"{what} = {value} exceeds the configured limit {limit}")


class LimitExceededError(Exception):
    """Raised when an instance is larger than a configured exhaustion or dimension bound."""

    pass
