#ifndef QRMEANS_QRMEANS_HPP
#define QRMEANS_QRMEANS_HPP

#include <qrmeans/circle_means.hpp>
#include <qrmeans/conjugation.hpp>
#include <qrmeans/constants.hpp>
#include <qrmeans/corpus.hpp>
#include <qrmeans/experiments.hpp>
#include <qrmeans/extremal.hpp>
#include <qrmeans/fixtures.hpp>
#include <qrmeans/lp_functional.hpp>
#include <qrmeans/map_spec.hpp>
#include <qrmeans/qr_profile.hpp>
#include <qrmeans/quadrature.hpp>
#include <qrmeans/report.hpp>
#include <qrmeans/sector_phi.hpp>
#include <qrmeans/series.hpp>

#endif
