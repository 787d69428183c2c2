#include <cstdio>
#include "cti/cti.h"
int main() { std::puts(cti_version()); return 0; }
