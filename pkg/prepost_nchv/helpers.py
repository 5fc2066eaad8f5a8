import json
from enum import Enum

import numpy as np


class JSONEncoder(json.JSONEncoder):
    def default(self, obj):
        if isinstance(obj, np.generic): #numpy scalars sneak in from the linear algebra
            return obj.item()
        if isinstance(obj, complex):
            return [obj.real, obj.imag]
        if isinstance(obj, Enum):
            return obj.value
        return super().default(obj) #anything else the standard encoder can handle (or reject)


def dumps(data):
    # one layout for every JSON document we write, so output is diffable and repeatable
    return json.dumps(data, cls=JSONEncoder, indent=2, sort_keys=True, ensure_ascii=False) + '\n'
