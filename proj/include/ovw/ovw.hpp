#pragma once

#include "ovw/error.hpp"
#include "ovw/words.hpp"
#include "ovw/spaces.hpp"
#include "ovw/largeness.hpp"
#include "ovw/coloring.hpp"
#include "ovw/ramsey.hpp"
#include "ovw/large_ramsey.hpp"
#include "ovw/io.hpp"
#include "ovw/certificate.hpp"
