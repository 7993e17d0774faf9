#include "jatam/checkpoint.hpp"

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>

namespace jatam {

namespace {

constexpr char kMagic[8] = {'J', 'A', 'T', 'A', 'M', 'C', 'K', 'P'};

class Writer {
public:
    template <typename T>
    void put(T v) {
        for (std::size_t i = 0; i < sizeof(T); ++i)
            out_.push_back(static_cast<char>(static_cast<std::uint64_t>(v) >> (8 * i)));
    }
    void bytes(const void* p, std::size_t n) { out_.append(static_cast<const char*>(p), n); }
    std::string& str() { return out_; }

private:
    std::string out_;
};

class Reader {
public:
    explicit Reader(std::string_view in) : in_(in) {}

    template <typename T>
    T get() {
        need(sizeof(T));
        std::uint64_t v = 0;
        for (std::size_t i = 0; i < sizeof(T); ++i)
            v |= std::uint64_t{static_cast<unsigned char>(in_[pos_ + i])} << (8 * i);
        pos_ += sizeof(T);
        return static_cast<T>(v);
    }
    std::string_view bytes(std::size_t n) {
        need(n);
        auto v = in_.substr(pos_, n);
        pos_ += n;
        return v;
    }
    bool at_end() const { return pos_ == in_.size(); }

private:
    void need(std::size_t n) const {
        if (in_.size() - pos_ < n)
            throw CheckpointError("checkpoint truncated");
    }
    std::string_view in_;
    std::size_t pos_ = 0;
};

std::uint32_t checksum(std::string_view s) {
    return oat_hash({reinterpret_cast<const std::uint8_t*>(s.data()), s.size()});
}

}  // namespace

std::string serialize_checkpoint(const EnumerationState& st) {
    Writer w;
    w.bytes(kMagic, sizeof kMagic);
    w.put<std::uint32_t>(kCheckpointVersion);
    w.put<std::uint32_t>(st.space.tile_count());
    w.put<std::uint32_t>(st.space.label_count());
    w.put<std::uint32_t>(static_cast<std::uint32_t>(st.space.fixed_bits().size()));
    for (const auto& f : st.space.fixed_bits()) {
        w.put<std::uint32_t>(static_cast<std::uint32_t>(f.position));
        w.put<std::uint8_t>(f.value);
    }
    const auto& p = st.params;
    w.put<std::int32_t>(p.classify.assembly.grid_dim);
    w.put<std::uint8_t>(static_cast<std::uint8_t>(p.classify.assembly.contact));
    w.put<std::int32_t>(p.classify.redundancy);
    w.put<std::uint8_t>(p.classify.rotation_invariant);
    w.put<std::uint64_t>(p.seed);
    w.put<std::uint64_t>(p.batch_size);
    w.put<std::uint64_t>(p.stride);
    w.put<std::uint64_t>(st.next_batch);
    for (auto k : {ClassKind::kDeterministic, ClassKind::kTrivialNondet, ClassKind::kStericNondet, ClassKind::kUnbound})
        w.put<std::uint64_t>(st.histogram.count(k));
    w.put<std::uint64_t>(st.histogram.collisions());
    w.put<std::uint64_t>(st.histogram.shapes().size());
    for (const auto& [h, r] : st.histogram.shapes()) {
        w.put<std::uint32_t>(h);
        w.put<std::uint64_t>(r.det_count);
        w.put<std::uint64_t>(r.steric_count);
        w.put<std::uint64_t>(r.first_det);
        w.put<std::uint64_t>(r.first_steric);
        w.put<std::uint16_t>(static_cast<std::uint16_t>(r.shape.width));
        w.put<std::uint16_t>(static_cast<std::uint16_t>(r.shape.height));
        w.bytes(r.shape.cells.data(), r.shape.cells.size());
    }
    w.put<std::uint32_t>(checksum(w.str()));
    return std::move(w.str());
}

EnumerationState deserialize_checkpoint(const std::string& bytes) {
    if (bytes.size() < sizeof kMagic + 8 || std::memcmp(bytes.data(), kMagic, sizeof kMagic) != 0)
        throw CheckpointError("not a checkpoint file");
    const std::string_view body(bytes.data(), bytes.size() - 4);
    Reader tail(std::string_view(bytes).substr(bytes.size() - 4));
    if (tail.get<std::uint32_t>() != checksum(body))
        throw CheckpointError("checkpoint checksum mismatch");

    Reader r(body);
    r.bytes(sizeof kMagic);
    const auto version = r.get<std::uint32_t>();
    if (version != kCheckpointVersion)
        throw CheckpointError("unsupported checkpoint version " + std::to_string(version));
    const auto tiles = r.get<std::uint32_t>();
    const auto labels = r.get<std::uint32_t>();
    std::vector<FixedBit> fixed(r.get<std::uint32_t>());
    for (auto& f : fixed) {
        f.position = r.get<std::uint32_t>();
        f.value = r.get<std::uint8_t>() != 0;
    }

    EnumerateParams p;
    p.classify.assembly.grid_dim = r.get<std::int32_t>();
    const auto contact = r.get<std::uint8_t>();
    if (contact > static_cast<std::uint8_t>(ContactRule::kStrict))
        throw CheckpointError("bad contact rule in checkpoint");
    p.classify.assembly.contact = static_cast<ContactRule>(contact);
    p.classify.redundancy = r.get<std::int32_t>();
    p.classify.rotation_invariant = r.get<std::uint8_t>() != 0;
    p.seed = r.get<std::uint64_t>();
    p.batch_size = r.get<std::uint64_t>();
    p.stride = r.get<std::uint64_t>();

    try {
        EnumerationState st{SearchSpace(tiles, labels, std::move(fixed)), p, r.get<std::uint64_t>(), {}};
        for (auto k :
             {ClassKind::kDeterministic, ClassKind::kTrivialNondet, ClassKind::kStericNondet, ClassKind::kUnbound})
            st.histogram.set_count(k, r.get<std::uint64_t>());
        st.histogram.set_collisions(r.get<std::uint64_t>());
        const auto m = r.get<std::uint64_t>();
        for (std::uint64_t i = 0; i < m; ++i) {
            const auto h = r.get<std::uint32_t>();
            ShapeRecord rec;
            rec.det_count = r.get<std::uint64_t>();
            rec.steric_count = r.get<std::uint64_t>();
            rec.first_det = r.get<std::uint64_t>();
            rec.first_steric = r.get<std::uint64_t>();
            rec.shape.width = r.get<std::uint16_t>();
            rec.shape.height = r.get<std::uint16_t>();
            const auto cells = r.bytes(static_cast<std::size_t>(rec.shape.width) * rec.shape.height);
            rec.shape.cells.assign(cells.begin(), cells.end());
            st.histogram.shapes().emplace(h, std::move(rec));
        }
        if (!r.at_end())
            throw CheckpointError("trailing bytes in checkpoint");
        if (st.next_batch > st.batch_count())
            throw CheckpointError("checkpoint batch counter out of range");
        return st;
    } catch (const std::invalid_argument& e) {
        throw CheckpointError(std::string("invalid checkpoint parameters: ") + e.what());
    }
}

void save_checkpoint(const std::string& path, const EnumerationState& state) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        const std::string data = serialize_checkpoint(state);
        os.write(data.data(), static_cast<std::streamsize>(data.size()));
        if (!os)
            throw CheckpointError("cannot write checkpoint " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec)
        throw CheckpointError("cannot move checkpoint into place: " + ec.message());
}

EnumerationState load_checkpoint(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw CheckpointError("cannot open checkpoint " + path);
    const std::string data((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    return deserialize_checkpoint(data);
}

}  // namespace jatam
