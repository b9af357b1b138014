#include <pybind11/pybind11.h>
PYBIND11_MODULE(_semigroup_lab, m) { m.doc() = "under construction"; }
