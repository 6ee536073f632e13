#pragma once

// Plain-text certificate format for partial line spreads.
//
//   mps-certificate 1
//   N 5
//   q 4
//   modulus 1 1 1          (or "modulus none" for prime q)
//   size 49
//   provenance ladder-4    (ladder-<k> | search | spread | external)
//   seed 7                 (or "seed none")
//   lines
//   <N+1 coords of basis point 1> <N+1 coords of basis point 2>
//   ...
//   end
//
// Each record holds the two smallest point ids of a line as normalized
// coordinate vectors; records are sorted by the first basis point.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mps/projgeom.hpp"
#include "mps/spread.hpp"

namespace mps {

inline constexpr int kCertificateVersion = 1;

class CertificateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Certificate {
    int n = 5;
    int q = 0;
    std::string provenance = "external";
    std::optional<std::uint64_t> rng_seed;
    std::vector<Line> lines;  // canonical order
};

Certificate make_certificate(const PartialSpread& s, std::string provenance,
                             std::optional<std::uint64_t> rng_seed = std::nullopt);

void write_certificate(std::ostream& os, const Geometry& geo, const Certificate& cert);
std::string certificate_text(const Geometry& geo, const Certificate& cert);

/// Raw file contents before any geometric interpretation.
struct CertificateFile {
    int version = 0;
    int n = 0;
    int q = 0;
    std::vector<int> modulus;
    std::size_t declared_size = 0;
    std::string provenance;
    std::optional<std::uint64_t> rng_seed;
    std::vector<std::pair<std::vector<int>, std::vector<int>>> records;
};

/// Throws CertificateError for syntax errors.
CertificateFile parse_certificate(std::istream& is);
CertificateFile read_certificate_file(const std::string& path);

struct VerifyReport {
    enum class Status { maximal, extendable, invalid };
    Status status = Status::invalid;
    std::size_t size = 0;
    std::size_t deficiency = 0;
    std::string message;
    std::optional<Line> witness;
    std::optional<std::pair<std::size_t, std::size_t>> conflict;  // record indices
    std::vector<Line> lines;
};

/// Rebuilds every line from its basis in a geometry matching (N, q) and
/// recomputes skewness, size and maximality. Nothing else from the header
/// is trusted.
VerifyReport verify_certificate(const Geometry& geo, const CertificateFile& file);

/// Builds the geometry named in the file header, then verifies.
VerifyReport verify_certificate(const CertificateFile& file);

}  // namespace mps
