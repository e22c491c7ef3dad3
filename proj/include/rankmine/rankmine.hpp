#pragma once

#include "rankmine/arrangements.hpp"
#include "rankmine/catalog.hpp"
#include "rankmine/common.hpp"
#include "rankmine/csv.hpp"
#include "rankmine/data.hpp"
#include "rankmine/hdr.hpp"
#include "rankmine/oracle.hpp"
#include "rankmine/partial.hpp"
#include "rankmine/pipeline.hpp"
#include "rankmine/question.hpp"
#include "rankmine/serialize.hpp"
#include "rankmine/simulate.hpp"
#include "rankmine/taxonomy.hpp"
#include "rankmine/trim.hpp"
