#pragma once

#include "ballmap.hpp"
#include "catalog.hpp"
#include "crjet.hpp"
#include "errors.hpp"
#include "instances.hpp"
#include "jet_sampling.hpp"
#include "lemmas.hpp"
#include "parallel.hpp"
#include "poly.hpp"
#include "polymatrix.hpp"
#include "random.hpp"
#include "scalar.hpp"
#include "serialize.hpp"
#include "suites.hpp"
#include "univariate.hpp"
