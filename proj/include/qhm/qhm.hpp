#ifndef QHM_QHM_HPP
#define QHM_QHM_HPP

#include "qhm/config.hpp"
#include "qhm/derivative.hpp"
#include "qhm/errors.hpp"
#include "qhm/grid.hpp"
#include "qhm/jobs.hpp"
#include "qhm/matrix_function.hpp"
#include "qhm/metric_spec.hpp"
#include "qhm/metrics.hpp"
#include "qhm/models.hpp"
#include "qhm/operator.hpp"
#include "qhm/params.hpp"
#include "qhm/polynomial.hpp"
#include "qhm/report.hpp"
#include "qhm/representation.hpp"
#include "qhm/spectrum.hpp"
#include "qhm/verify.hpp"

#endif // QHM_QHM_HPP
