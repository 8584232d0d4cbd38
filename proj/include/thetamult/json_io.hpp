// JSON ingestion and reporting. Integer entries are reduced into their
// residue classes on the way in; malformed shapes raise std::invalid_argument
// for the CLI to map onto its invalid-input exit code.
#pragma once

#include <string>

#include "json.hpp"
#include "thetamult/lagrangian.hpp"
#include "thetamult/linalg.hpp"
#include "thetamult/siegel.hpp"
#include "thetamult/symplectic.hpp"

namespace thetamult {

Z4Matrix z4_matrix_from_json(const nlohmann::json& j, int expected_size);
nlohmann::json z4_matrix_to_json(const Z4Matrix& m);

Z4Vector z4_vector_from_json(const nlohmann::json& j, int expected_size);
nlohmann::json z4_vector_to_json(const Z4Vector& v);

// {"basis": [[...], ...]} with g rows of length 2g.
OrientedLagrangian lagrangian_from_json(const SymplecticSpace& space,
                                        const QuadraticForm& form,
                                        const nlohmann::json& j);
nlohmann::json lagrangian_to_json(const OrientedLagrangian& L);

// {"re": [[...]], "im": [[...]]}, both g x g.
SiegelPoint siegel_from_json(const nlohmann::json& j);
nlohmann::json siegel_to_json(const SiegelPoint& tau);

nlohmann::json int_symplectic_to_json(const IntSymplectic& m);

// Parses either inline JSON text or, when the argument names a readable
// file, the file's contents.
nlohmann::json parse_json_or_file(const std::string& arg);

}  // namespace thetamult
