// JSON/CSV renderings of the report types. Arbitrary-precision integers
// serialize as decimal strings; reals as shortest-round-trip doubles.
#pragma once

#include <string>

#include "degrees.hpp"
#include "ensemble.hpp"
#include "heights.hpp"
#include "rootfinding.hpp"
#include "spectral.hpp"

namespace monodyn {

std::string real_to_string(const Real& r);

std::string eigen_moduli_to_json(const EigenModuli& em);
std::string dyndeg_to_json(const DynDegReport& report);
std::string candidates_to_json(const CandidateSet& set);
std::string char_poly_to_json(const IntPolynomial& p);

std::string degree_table_to_json(const DegreeTable& table, int only_k = -1);
std::string degree_table_to_csv(const DegreeTable& table, int only_k = -1);
std::string asymptotics_to_json(const AsymptoticsReport& report);

std::string height_series_to_json(const HeightSeries& series);
std::string height_series_to_csv(const HeightSeries& series);
// `check` mode: both series plus the identity diagnostic.
std::string orbit_check_to_json(const HeightSeries& fast, const HeightSeries& brute, unsigned bits);

std::string ensemble_to_json(const EnsembleReport& report);
std::string check_to_json(const CheckReport& report);

}  // namespace monodyn
