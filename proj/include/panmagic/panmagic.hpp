#pragma once

#include "panmagic/core.hpp"
#include "panmagic/decomp.hpp"
#include "panmagic/gallery.hpp"
#include "panmagic/io.hpp"
#include "panmagic/linalg.hpp"
#include "panmagic/matrix.hpp"
#include "panmagic/perms.hpp"
#include "panmagic/products.hpp"
#include "panmagic/scalar.hpp"
#include "panmagic/simplex.hpp"
