import os
import logging

# settings are read once from the environment; CLI flags override them
config = {}
config['REPORTS'] = os.getenv("CMF_REPORTS", "reports")
config['CONST_BITS'] = int(os.getenv("CMF_CONST_BITS", "256"))
config['MAX_BITS'] = int(os.getenv("CMF_MAX_BITS", "65536"))
config['SEARCH_CAP'] = int(os.getenv("CMF_SEARCH_CAP", "200000"))
config['JOBS'] = int(os.getenv("CMF_JOBS", "1"))
config['DELTA_CAP'] = float(os.getenv("CMF_DELTA_CAP", "1e6"))
config['LOG_LEVEL'] = os.getenv("CMF_LOG_LEVEL", "WARNING")


def reports_path():
    ''' directory for generated reports, created on first use '''
    path = config['REPORTS']
    if not os.path.exists(path):
        os.makedirs(path)
    return path


def setup_logging(level=None):
    logging.basicConfig(level=(level or config['LOG_LEVEL']).upper(),
                        format="%(levelname)s %(name)s: %(message)s")
