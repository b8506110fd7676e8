#pragma once

#include "moore/random.hpp"

namespace moore {
namespace testing = gen;
}
