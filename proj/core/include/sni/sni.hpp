#pragma once

#include <sni/baselines.hpp>
#include <sni/completion.hpp>
#include <sni/datasets.hpp>
#include <sni/dense.hpp>
#include <sni/errors.hpp>
#include <sni/integrators.hpp>
#include <sni/manifold.hpp>
#include <sni/matcore.hpp>
#include <sni/observations.hpp>
#include <sni/oracle.hpp>
#include <sni/random.hpp>
#include <sni/report.hpp>
