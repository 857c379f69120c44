/** Umbrella header: pulls in the whole library. */

#ifndef FMNAR_FMNAR_HPP
#define FMNAR_FMNAR_HPP

#include "classifier.hpp"
#include "curve.hpp"
#include "dataset_io.hpp"
#include "errors.hpp"
#include "estimators.hpp"
#include "experiment.hpp"
#include "kernel.hpp"
#include "mnar.hpp"
#include "oracle.hpp"
#include "rng.hpp"

#endif // FMNAR_FMNAR_HPP
