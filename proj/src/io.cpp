#include "properad/io.hpp"
