#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>

#include "tlsub/fock.hpp"

namespace tlsub {

namespace {

constexpr char kMagic[8] = {'T', 'L', 'S', 'U', 'B', 'F', 'K', '1'};
constexpr std::uint32_t kVersion = 1;

template <class T> void put(std::ostream& os, T value) {
    unsigned char buf[sizeof(T)];
    std::memcpy(buf, &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(buf, buf + sizeof(T));
    os.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <class T> T get(std::istream& is) {
    unsigned char buf[sizeof(T)];
    if (!is.read(reinterpret_cast<char*>(buf), sizeof(T)))
        throw Error(ErrorCode::Io, "cache file truncated");
    if constexpr (std::endian::native == std::endian::big) std::reverse(buf, buf + sizeof(T));
    T value;
    std::memcpy(&value, buf, sizeof(T));
    return value;
}

void put_matrix(std::ostream& os, const CMatrix& x) {
    put<std::int64_t>(os, x.rows());
    put<std::int64_t>(os, x.cols());
    for (Index r = 0; r < x.rows(); ++r)
        for (Index c = 0; c < x.cols(); ++c) {
            put<double>(os, x(r, c).real());
            put<double>(os, x(r, c).imag());
        }
}

CMatrix get_matrix(std::istream& is, Index rows, Index cols) {
    const auto r = get<std::int64_t>(is);
    const auto c = get<std::int64_t>(is);
    if (r != rows || c != cols) throw Error(ErrorCode::Io, "cache matrix has unexpected shape");
    CMatrix x(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) {
            const double re = get<double>(is);
            const double im = get<double>(is);
            x(i, j) = Complex(re, im);
        }
    return x;
}

struct Fnv {
    std::uint64_t h = 1469598103934665603ull;
    template <class T> void add(T value) {
        unsigned char buf[sizeof(T)];
        std::memcpy(buf, &value, sizeof(T));
        for (unsigned char b : buf) {
            h ^= b;
            h *= 1099511628211ull;
        }
    }
};

} // namespace

std::uint64_t cache_key(const TLData& data, int N) {
    Fnv f;
    f.add<std::int32_t>(data.m);
    f.add<std::int32_t>(N);
    f.add<double>(data.tol);
    for (Index i = 0; i < data.m; ++i)
        for (Index j = 0; j < data.m; ++j) {
            f.add<double>(data.A(i, j).real());
            f.add<double>(data.A(i, j).imag());
        }
    return f.h;
}

void save_cache(const FockTruncation& fock, const std::string& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw Error(ErrorCode::Io, "cannot open cache file for writing: " + path);
    os.write(kMagic, sizeof kMagic);
    put<std::uint32_t>(os, kVersion);
    put<std::uint64_t>(os, cache_key(fock.data(), fock.levels()));
    put<std::int32_t>(os, fock.m());
    put<std::int32_t>(os, fock.levels());
    put<double>(os, fock.data().tol);
    for (Index d : fock.dims()) put<std::int64_t>(os, d);
    for (int n = 1; n <= fock.levels(); ++n) put_matrix(os, fock.iota(n));
    for (int n = 0; n < fock.levels(); ++n) put_matrix(os, fock.transfer(n));
    for (int i = 0; i < fock.m(); ++i)
        for (int n = 0; n < fock.levels(); ++n) put_matrix(os, fock.creation(i, n));
    if (!os) throw Error(ErrorCode::Io, "failed writing cache file: " + path);
}

FockTruncation load_cache(const std::string& path, const TLData& data, int N) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error(ErrorCode::Io, "cannot open cache file: " + path);
    char magic[8];
    if (!is.read(magic, sizeof magic) || std::memcmp(magic, kMagic, sizeof magic) != 0)
        throw Error(ErrorCode::Io, "not a cache file: " + path);
    if (get<std::uint32_t>(is) != kVersion) throw Error(ErrorCode::Io, "cache version mismatch");
    if (get<std::uint64_t>(is) != cache_key(data, N))
        throw Error(ErrorCode::Io, "cache was built for different data");
    const auto m = get<std::int32_t>(is);
    const auto levels = get<std::int32_t>(is);
    const double tol = get<double>(is);
    if (m != data.m || levels != N || tol != data.tol)
        throw Error(ErrorCode::Io, "cache header does not match request");

    FockTruncation f;
    f.data_ = data;
    f.levels_ = N;
    for (int n = 0; n <= N; ++n) f.dims_.push_back(get<std::int64_t>(is));
    f.iota_.resize(N + 1);
    for (int n = 1; n <= N; ++n) f.iota_[n] = get_matrix(is, m * f.dims_[n - 1], f.dims_[n]);
    for (int n = 0; n < N; ++n)
        f.transfer_.push_back(get_matrix(is, m * f.dims_[n], m * f.dims_[n]));
    f.creation_.assign(m, std::vector<CMatrix>(N));
    for (int i = 0; i < m; ++i)
        for (int n = 0; n < N; ++n) f.creation_[i][n] = get_matrix(is, f.dims_[n + 1], f.dims_[n]);
    return f;
}

} // namespace tlsub
