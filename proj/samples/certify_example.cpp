// Certifies a few weight vectors and prints the certificates.

#include <iostream>

#include "rsum/certificate_json.hpp"
#include "rsum/prover.hpp"

int main() {
    using namespace rsum;

    std::vector<std::vector<Rational>> inputs = {
        {make_rational(1, 2), make_rational(1, 2), make_rational(1, 2), make_rational(1, 2)},
        std::vector<Rational>(9, make_rational(1, 3)),
        {make_rational(3, 5), make_rational(4, 5)},
    };
    for (const auto& raw : inputs) {
        WeightVector a = WeightVector::from_rationals(raw);
        ProofCertificate cert = certified_lower_bound(a);
        std::cout << a.to_string() << " -> case " << case_name(cert.label) << ", lower bound "
                  << fraction_string(cert.lower_bound) << " = " << decimal_string(cert.lower_bound);
        if (cert.exact_probability) {
            std::cout << ", exact " << fraction_string(*cert.exact_probability);
        }
        std::cout << (cert.sound == Soundness::Sound ? " (sound)" : "") << "\n";
        std::cout << certificate_json(cert).dump(2) << "\n\n";
    }
    return 0;
}
