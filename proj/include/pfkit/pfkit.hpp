#ifndef PFKIT_PFKIT_HPP
#define PFKIT_PFKIT_HPP

#include "pfkit/error.hpp"
#include "pfkit/exactalg/groebner.hpp"
#include "pfkit/exactalg/parse.hpp"
#include "pfkit/exactalg/ring.hpp"
#include "pfkit/pfield/catalog.hpp"
#include "pfkit/pfield/fun.hpp"
#include "pfkit/pfield/hom.hpp"
#include "pfkit/pfield/partial_field.hpp"
#include "pfkit/pmatrix/matrix.hpp"
#include "pfkit/matroid/matroid.hpp"
#include "pfkit/universal/universal.hpp"
#include "pfkit/confine/confine.hpp"
#include "pfkit/io/json.hpp"
#include "pfkit/io/homgraph.hpp"

#endif
