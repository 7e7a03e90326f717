#pragma once

#include "msos/constraint_set.hpp"
#include "msos/sos_engine.hpp"

#include <string>

namespace msos {

struct VerifyReport {
    // largest |coefficient mismatch| between the target expansion and the
    // certificate expansion, relative to the largest target coefficient
    double max_coeff_error = 0.0;
    double pointwise_error = 0.0;  // max relative residual over sample points
    bool pass = false;
    int plain_degree = -1;  // -1 when the block is empty
    std::vector<int> multiplier_degrees;
    int radical_plain_degree = -1;
    std::vector<int> radical_multiplier_degrees;
};

// Expands the certificate exactly in rational arithmetic and compares it
// coefficientwise against Delta^{2b} p (radical: Delta^b p, both u-parity
// channels). Uses only poly-core arithmetic.
VerifyReport verify(const SOSCertificate& cert, const Polynomial& p, const ConstraintSet& cs,
                    double tol, int pointwise_samples = 200);

// JSON document; lossless round-trip via exact rational coefficients.
std::string serialize(const SOSCertificate& cert, const ConstraintSet& cs);
struct ParsedCertificate {
    SOSCertificate cert;
    std::vector<Polynomial> constraints;
};
ParsedCertificate parse_certificate(const std::string& document);

}  // namespace msos
