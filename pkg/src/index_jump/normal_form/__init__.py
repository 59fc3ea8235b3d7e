from .d_block import *
from .n1_block import *
from .n2_block import *
from .r_block import *
