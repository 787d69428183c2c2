#include "doctest.h"
#include "core/tree.hpp"
TEST_CASE("placeholder") { CHECK(cti::TreeGeometry{2, cti::RootDegree::Full}.sphere_size(0) == 1); }
