#pragma once

#include "tempered/derham.hpp"
#include "tempered/error.hpp"
#include "tempered/formats.hpp"
#include "tempered/growth_profile.hpp"
#include "tempered/line_opens.hpp"
#include "tempered/linalg.hpp"
#include "tempered/ode.hpp"
#include "tempered/padic.hpp"
#include "tempered/series.hpp"
#include "tempered/series_io.hpp"
#include "tempered/text_format.hpp"
#include "tempered/tube.hpp"
