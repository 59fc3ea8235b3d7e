from .constants import *
from .dataframe_utils import *
from .exact_utils import *
from .exceptions import *
from .file_utils import *
from .module_utils import *
from .utils import *
