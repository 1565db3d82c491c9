#include <pybind11/pybind11.h>
PYBIND11_MODULE(_prefixm, m) { m.doc() = "prefix membership toolkit"; }
