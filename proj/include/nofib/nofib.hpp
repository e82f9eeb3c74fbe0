#pragma once

#include "nofib/base.hpp"
#include "nofib/commands.hpp"
#include "nofib/draw.hpp"
#include "nofib/format.hpp"
#include "nofib/groups.hpp"
#include "nofib/lefschetz.hpp"
#include "nofib/openbook.hpp"
#include "nofib/smallgroups.hpp"
#include "nofib/surfaces.hpp"
#include "nofib/trisect.hpp"
