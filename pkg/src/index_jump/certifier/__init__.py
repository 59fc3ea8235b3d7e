from .even_certifier import *
from .odd_certifier import *
