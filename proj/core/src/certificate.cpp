#include "mps/certificate.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace mps {

Certificate make_certificate(const PartialSpread& s, std::string provenance,
                             std::optional<std::uint64_t> rng_seed) {
    Certificate c;
    c.n = s.geometry().dimension();
    c.q = s.geometry().q();
    c.provenance = std::move(provenance);
    c.rng_seed = rng_seed;
    c.lines = s.lines();
    std::sort(c.lines.begin(), c.lines.end());
    return c;
}

void write_certificate(std::ostream& os, const Geometry& geo, const Certificate& cert) {
    if (cert.n != geo.dimension() || cert.q != geo.q())
        throw std::invalid_argument("certificate and geometry disagree on (N, q)");
    std::vector<Line> lines = cert.lines;
    std::sort(lines.begin(), lines.end());

    os << "mps-certificate " << kCertificateVersion << '\n';
    os << "N " << cert.n << '\n';
    os << "q " << cert.q << '\n';
    os << "modulus";
    if (geo.field().modulus().empty()) {
        os << " none";
    } else {
        for (int c : geo.field().modulus()) os << ' ' << c;
    }
    os << '\n';
    os << "size " << lines.size() << '\n';
    os << "provenance " << cert.provenance << '\n';
    os << "seed ";
    if (cert.rng_seed)
        os << *cert.rng_seed;
    else
        os << "none";
    os << "\nlines\n";
    for (const auto& l : lines) {
        const auto [a, b] = l.basis();
        bool first = true;
        for (PointId p : {a, b}) {
            for (Elem x : geo.coords(p)) {
                if (!first) os << ' ';
                os << static_cast<int>(x);
                first = false;
            }
        }
        os << '\n';
    }
    os << "end\n";
}

std::string certificate_text(const Geometry& geo, const Certificate& cert) {
    std::ostringstream os;
    write_certificate(os, geo, cert);
    return os.str();
}

namespace {

std::string next_line(std::istream& is, std::size_t& lineno) {
    std::string line;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) return line;
    }
    throw CertificateError("unexpected end of certificate after line " + std::to_string(lineno));
}

std::istringstream expect_key(std::istream& is, std::size_t& lineno, const std::string& key) {
    std::istringstream ls(next_line(is, lineno));
    std::string k;
    ls >> k;
    if (k != key)
        throw CertificateError("line " + std::to_string(lineno) + ": expected '" + key + "', got '" +
                               k + "'");
    return ls;
}

template <typename T>
T read_value(std::istringstream& ls, std::size_t lineno, const char* what) {
    T v{};
    if (!(ls >> v)) throw CertificateError("line " + std::to_string(lineno) + ": bad " + what);
    return v;
}

}  // namespace

CertificateFile parse_certificate(std::istream& is) {
    CertificateFile f;
    std::size_t lineno = 0;
    {
        auto ls = expect_key(is, lineno, "mps-certificate");
        f.version = read_value<int>(ls, lineno, "version");
        if (f.version != kCertificateVersion)
            throw CertificateError("unsupported certificate version " + std::to_string(f.version));
    }
    {
        auto ls = expect_key(is, lineno, "N");
        f.n = read_value<int>(ls, lineno, "N");
    }
    {
        auto ls = expect_key(is, lineno, "q");
        f.q = read_value<int>(ls, lineno, "q");
    }
    {
        auto ls = expect_key(is, lineno, "modulus");
        std::string tok;
        while (ls >> tok) {
            if (tok == "none") break;
            try {
                f.modulus.push_back(std::stoi(tok));
            } catch (const std::exception&) {
                throw CertificateError("line " + std::to_string(lineno) + ": bad modulus coefficient");
            }
        }
    }
    {
        auto ls = expect_key(is, lineno, "size");
        f.declared_size = read_value<std::size_t>(ls, lineno, "size");
    }
    {
        auto ls = expect_key(is, lineno, "provenance");
        f.provenance = read_value<std::string>(ls, lineno, "provenance");
    }
    {
        auto ls = expect_key(is, lineno, "seed");
        auto tok = read_value<std::string>(ls, lineno, "seed");
        if (tok != "none") {
            try {
                f.rng_seed = std::stoull(tok);
            } catch (const std::exception&) {
                throw CertificateError("line " + std::to_string(lineno) + ": bad seed");
            }
        }
    }
    expect_key(is, lineno, "lines");
    if (f.n < 1 || f.n > 16) throw CertificateError("implausible dimension N=" + std::to_string(f.n));
    const std::size_t len = static_cast<std::size_t>(f.n) + 1;
    for (;;) {
        std::string line = next_line(is, lineno);
        if (line == "end") break;
        std::istringstream ls(line);
        std::vector<int> vals;
        int v = 0;
        while (ls >> v) vals.push_back(v);
        if (!ls.eof() || vals.size() != 2 * len)
            throw CertificateError("line " + std::to_string(lineno) + ": expected " +
                                   std::to_string(2 * len) + " integers");
        f.records.emplace_back(std::vector<int>(vals.begin(), vals.begin() + len),
                               std::vector<int>(vals.begin() + len, vals.end()));
    }
    return f;
}

CertificateFile read_certificate_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CertificateError("cannot open certificate '" + path + "'");
    return parse_certificate(in);
}

VerifyReport verify_certificate(const Geometry& geo, const CertificateFile& file) {
    VerifyReport r;
    if (file.n != geo.dimension() || file.q != geo.q()) {
        r.message = "certificate (N, q) does not match the geometry";
        return r;
    }
    const auto mod = geo.field().modulus();
    if (!std::ranges::equal(file.modulus, mod)) {
        r.message = "field modulus in certificate does not match GF(" + std::to_string(geo.q()) + ")";
        return r;
    }

    std::vector<Line> lines;
    lines.reserve(file.records.size());
    const std::size_t len = geo.vector_length();
    std::vector<Elem> va(len), vb(len);
    for (std::size_t i = 0; i < file.records.size(); ++i) {
        const auto& [ra, rb] = file.records[i];
        auto convert = [&](const std::vector<int>& src, std::vector<Elem>& dst) {
            if (src.size() != len) return false;
            for (std::size_t k = 0; k < len; ++k) {
                if (src[k] < 0 || src[k] >= geo.q()) return false;
                dst[k] = static_cast<Elem>(src[k]);
            }
            return std::ranges::any_of(dst, [](Elem x) { return x != 0; });
        };
        if (!convert(ra, va) || !convert(rb, vb)) {
            r.message = "record " + std::to_string(i) + ": invalid coordinate vector";
            return r;
        }
        const PointId a = geo.point_of(va);
        const PointId b = geo.point_of(vb);
        if (a == b) {
            r.message = "record " + std::to_string(i) + ": basis points coincide";
            return r;
        }
        lines.push_back(geo.line_span(a, b));
    }

    // Pairwise skewness through a point -> record map.
    std::vector<std::uint32_t> owner(geo.num_points(), 0xffffffffu);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        for (PointId p : lines[i].points()) {
            if (owner[p] != 0xffffffffu) {
                r.conflict = std::make_pair(static_cast<std::size_t>(owner[p]), i);
                r.message = "records " + std::to_string(owner[p]) + " and " + std::to_string(i) +
                            " share point " + std::to_string(p);
                r.lines = std::move(lines);
                return r;
            }
            owner[p] = static_cast<std::uint32_t>(i);
        }
    }
    if (file.declared_size != lines.size()) {
        r.message = "header size " + std::to_string(file.declared_size) + " but " +
                    std::to_string(lines.size()) + " records";
        r.lines = std::move(lines);
        return r;
    }

    PartialSpread s(geo);
    for (const auto& l : lines) s.insert(l, LineOrigin::external);
    r.size = s.size();
    if (geo.dimension() % 2 == 1) r.deficiency = static_cast<std::size_t>(geo.counts().spread_size) - r.size;
    const MaximalityVerdict v = is_maximal(s);
    if (v.maximal) {
        r.status = VerifyReport::Status::maximal;
        r.message = "maximal";
    } else {
        r.status = VerifyReport::Status::extendable;
        r.witness = v.witness;
        r.message = "extendable";
    }
    r.lines = std::move(lines);
    return r;
}

VerifyReport verify_certificate(const CertificateFile& file) {
    Geometry geo = [&] {
        try {
            return Geometry::make(file.q, file.n);
        } catch (const std::invalid_argument& e) {
            throw CertificateError(std::string("certificate names an unsupported geometry: ") + e.what());
        }
    }();
    return verify_certificate(geo, file);
}

}  // namespace mps
