#include "fclsh/dataset.hpp"

#include "fclsh/errors.hpp"

#include <algorithm>
#include <fstream>

namespace fclsh {

namespace {

constexpr char kMagic[4] = {'F', 'C', 'L', '1'};

void put_u64_le(std::ostream& out, uint64_t x) {
    char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((x >> (8 * i)) & 0xff);
    out.write(buf, 8);
}

uint64_t get_u64_le(std::istream& in) {
    char buf[8];
    in.read(buf, 8);
    if (in.gcount() != 8) throw DataError("dataset: truncated header");
    uint64_t x = 0;
    for (int i = 0; i < 8; ++i) x |= static_cast<uint64_t>(static_cast<uint8_t>(buf[i])) << (8 * i);
    return x;
}

Dataset load_binary(std::istream& in) {
    uint64_t n = get_u64_le(in);
    uint64_t d = get_u64_le(in);
    if (d == 0) throw DataError("dataset: zero width");
    size_t row_bytes = (static_cast<size_t>(d) + 7) / 8;
    Dataset ds;
    ds.dims = static_cast<size_t>(d);
    ds.points.reserve(static_cast<size_t>(n));
    std::vector<char> row(row_bytes);
    for (uint64_t i = 0; i < n; ++i) {
        in.read(row.data(), static_cast<std::streamsize>(row_bytes));
        if (static_cast<size_t>(in.gcount()) != row_bytes)
            throw DataError("dataset: truncated at row " + std::to_string(i));
        BitVector v(ds.dims);
        for (size_t j = 0; j < ds.dims; ++j)
            if ((static_cast<uint8_t>(row[j / 8]) >> (j % 8)) & 1) v.set(j, true);
        if (d % 8 != 0) {
            uint8_t pad = static_cast<uint8_t>(row[row_bytes - 1]) >> (d % 8);
            if (pad != 0) throw DataError("dataset: nonzero padding bits in row " + std::to_string(i));
        }
        ds.points.push_back(std::move(v));
    }
    if (in.peek() != EOF) throw DataError("dataset: trailing bytes after last row");
    return ds;
}

Dataset load_text(std::istream& in) {
    Dataset ds;
    std::string line;
    size_t row = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        BitVector v = BitVector::from_string(line);
        if (ds.points.empty()) {
            ds.dims = v.dims();
        } else if (v.dims() != ds.dims) {
            throw DataError("dataset: line " + std::to_string(row) + " has width " +
                            std::to_string(v.dims()) + ", expected " + std::to_string(ds.dims));
        }
        ds.points.push_back(std::move(v));
        ++row;
    }
    if (ds.points.empty()) throw DataError("dataset: no vectors in text input");
    return ds;
}

} // namespace

void save_dataset(const Dataset& ds, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("dataset: cannot open '" + path + "' for writing");
    out.write(kMagic, 4);
    put_u64_le(out, ds.size());
    put_u64_le(out, ds.dims);
    size_t row_bytes = (ds.dims + 7) / 8;
    std::vector<char> row(row_bytes);
    for (const BitVector& v : ds.points) {
        std::fill(row.begin(), row.end(), 0);
        for (size_t j = 0; j < ds.dims; ++j)
            if (v.get(j)) row[j / 8] = static_cast<char>(static_cast<uint8_t>(row[j / 8]) | (1u << (j % 8)));
        out.write(row.data(), static_cast<std::streamsize>(row_bytes));
    }
    if (!out) throw DataError("dataset: write to '" + path + "' failed");
}

void save_dataset_text(const Dataset& ds, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw UsageError("dataset: cannot open '" + path + "' for writing");
    for (const BitVector& v : ds.points) out << v.to_string() << '\n';
    if (!out) throw DataError("dataset: write to '" + path + "' failed");
}

Dataset load_dataset(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("dataset: cannot open '" + path + "'");
    char magic[4] = {0, 0, 0, 0};
    in.read(magic, 4);
    if (in.gcount() == 4 && std::equal(magic, magic + 4, kMagic)) return load_binary(in);
    in.clear();
    in.seekg(0);
    return load_text(in);
}

} // namespace fclsh
