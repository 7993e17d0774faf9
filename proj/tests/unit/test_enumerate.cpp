#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "jatam/checkpoint.hpp"
#include "jatam/enumerate.hpp"
#include "jatam/histogram.hpp"

using namespace jatam;

namespace {

EnumerateParams small_params(int k = 4) {
    EnumerateParams p;
    p.classify.redundancy = k;
    p.batch_size = 4096;
    return p;
}

std::string csv_of(const Histogram& h, const SearchSpace& s) {
    std::ostringstream os;
    write_csv(os, h, s, s.cardinality());
    return os.str();
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("jatam_test_" + name)).string();
}

}  // namespace

TEST(Histogram, RecordAndTotals) {
    Histogram h;
    Classification det;
    det.shape = parse_ascii("#\n");
    det.hash = shape_hash(det.shape);
    h.record(7, det);
    h.record(3, det);
    Classification unbound;
    unbound.kind = ClassKind::kUnbound;
    h.record(1, unbound);
    Classification steric = det;
    steric.kind = ClassKind::kStericNondet;
    h.record(9, steric);
    EXPECT_EQ(h.total(), 4u);
    ASSERT_EQ(h.shapes().size(), 1u);
    const auto& r = h.shapes().at(det.hash);
    EXPECT_EQ(r.det_count, 2u);
    EXPECT_EQ(r.steric_count, 1u);
    EXPECT_EQ(r.first_det, 3u);
    EXPECT_EQ(r.first_steric, 9u);
    EXPECT_EQ(r.representative(), 3u);
    EXPECT_EQ(h.deterministic_shape_count(), 1u);
    EXPECT_EQ(h.collisions(), 0u);
}

TEST(Histogram, CollisionIsCounted) {
    Histogram h;
    Classification a;
    a.shape = parse_ascii("#\n");
    a.hash = 42;
    Classification b = a;
    b.shape = parse_ascii("##\n");
    h.record(0, a);
    h.record(1, b);
    EXPECT_EQ(h.collisions(), 1u);
}

TEST(Histogram, MergeIsOrderFree) {
    const SearchSpace s(2, 4);
    const auto p = small_params();
    const Histogram a = classify_items_serial(s, p, 0, 20000);
    const Histogram b = classify_items_serial(s, p, 20000, 40000);
    const Histogram c = classify_items_serial(s, p, 40000, 65536);
    Histogram ab_c = a, a_bc = a, cba = c;
    ab_c.merge(b);
    ab_c.merge(c);
    Histogram bc = b;
    bc.merge(c);
    a_bc.merge(bc);
    cba.merge(b);
    cba.merge(a);
    EXPECT_EQ(ab_c, a_bc);
    EXPECT_EQ(ab_c, cba);
    EXPECT_EQ(ab_c, classify_items_serial(s, p, 0, 65536));
    EXPECT_EQ(ab_c.total(), 65536u);
}

TEST(Enumerate, ParallelMatchesSerial) {
    const SearchSpace s(2, 8);
    auto p = small_params(8);
    for (int workers : {1, 2, 4, 8}) {
        p.workers = workers;
        EXPECT_EQ(classify_items(s, p, 1000000, 1030000), classify_items_serial(s, p, 1000000, 1030000));
    }
}

TEST(Enumerate, BatchSizeDoesNotMatter) {
    const SearchSpace s(2, 4);
    auto p = small_params(16);
    p.batch_size = 65536;
    const std::string whole = csv_of(enumerate_space(s, p), s);
    for (std::uint64_t b : {1000u, 4096u, 7u * 1024u}) {
        p.batch_size = b;
        EXPECT_EQ(csv_of(enumerate_space(s, p), s), whole) << b;
    }
}

TEST(Enumerate, SeedChangesStreams) {
    // Same space and k, different seed: class totals of S(2,4) at k = 16 are
    // fully settled, so they agree even though the streams differ.
    const SearchSpace s(2, 4);
    auto p = small_params(16);
    const Histogram a = enumerate_space(s, p);
    p.seed = 2;
    const Histogram b = enumerate_space(s, p);
    for (auto k : {ClassKind::kDeterministic, ClassKind::kTrivialNondet, ClassKind::kStericNondet, ClassKind::kUnbound})
        EXPECT_EQ(a.count(k), b.count(k));
}

TEST(Enumerate, StratifiedSample) {
    const SearchSpace s(2, 4);
    auto p = small_params();
    p.stride = 100;
    EXPECT_EQ(item_count(s, p), 656u);
    for (std::uint64_t i = 0; i < item_count(s, p); ++i) {
        const std::uint64_t index = item_index(s, p, i);
        ASSERT_GE(index, i * 100);
        ASSERT_LT(index, std::min<std::uint64_t>(s.cardinality(), (i + 1) * 100));
    }
    EXPECT_EQ(enumerate_space(s, p).total(), 656u);
    p.stride = 0;
    EXPECT_THROW(item_count(s, p), std::invalid_argument);
}

TEST(Enumerate, MisclassificationCurveIsMonotone) {
    const SearchSpace s(2, 4);
    const auto curve = misclassification_curve(s, small_params(), {1, 2, 4, 8}, 32);
    ASSERT_EQ(curve.size(), 4u);
    for (std::size_t i = 1; i < curve.size(); ++i)
        EXPECT_LE(curve[i].misclassified, curve[i - 1].misclassified);
    EXPECT_GT(curve[0].misclassified, 0u);
    EXPECT_THROW(misclassification_curve(s, small_params(), {4, 2}, 32), std::invalid_argument);
}

TEST(Csv, WriteAndRead) {
    const SearchSpace s(2, 4);
    const Histogram h = enumerate_space(s, small_params(16));
    std::istringstream is(csv_of(h, s));
    const auto rows = read_csv(is);
    ASSERT_EQ(rows.size(), h.shapes().size());
    std::uint64_t det = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        const auto& rec = h.shapes().at(r.hash);
        EXPECT_EQ(r.det_count, rec.det_count);
        EXPECT_EQ(r.cell_count, rec.shape.cell_count());
        EXPECT_NEAR(r.frequency, static_cast<double>(r.det_count) / 65536.0, 1e-10 * r.frequency);
        EXPECT_EQ(r.representative_genome, genome_at_index(s, rec.representative()).to_string());
        if (i > 0) {
            EXPECT_GE(rows[i - 1].det_count, r.det_count);
        }
        det += r.det_count;
    }
    EXPECT_EQ(det, h.count(ClassKind::kDeterministic));
    // The monomer leads: every set whose seed has no active edge.
    EXPECT_EQ(rows[0].cell_count, 1);

    std::istringstream bad("hash_hex,width\n0x1,2\n");
    EXPECT_THROW(read_csv(bad), std::runtime_error);
    std::istringstream empty("");
    EXPECT_THROW(read_csv(empty), std::runtime_error);
}

TEST(Checkpoint, RoundTrip) {
    const SearchSpace s = SearchSpace::s32_3_8();
    EnumerateParams p = small_params(7);
    p.stride = 1u << 16;
    p.batch_size = 1000;
    EnumerationState state{s, p, 0, {}};
    state.histogram = classify_items(s, p, 0, 3000);
    state.next_batch = 3;
    const std::string bytes = serialize_checkpoint(state);
    ASSERT_EQ(bytes.substr(0, 8), "JATAMCKP");
    const EnumerationState back = deserialize_checkpoint(bytes);
    EXPECT_EQ(back.space, s);
    EXPECT_EQ(back.next_batch, 3u);
    EXPECT_EQ(back.params.stride, p.stride);
    EXPECT_EQ(back.params.classify.redundancy, 7);
    EXPECT_EQ(back.histogram, state.histogram);
    EXPECT_EQ(serialize_checkpoint(back), bytes);
}

TEST(Checkpoint, DetectsDamage) {
    const SearchSpace s(2, 4);
    EnumerationState state{s, small_params(), 1, {}};
    state.histogram = classify_items(s, state.params, 0, 4096);
    const std::string bytes = serialize_checkpoint(state);
    for (std::size_t pos : {std::size_t{3}, std::size_t{12}, bytes.size() / 2, bytes.size() - 1}) {
        std::string bad = bytes;
        bad[pos] = static_cast<char>(bad[pos] ^ 0x10);
        EXPECT_THROW(deserialize_checkpoint(bad), CheckpointError) << pos;
    }
    EXPECT_THROW(deserialize_checkpoint(bytes.substr(0, bytes.size() - 9)), CheckpointError);
    EXPECT_THROW(deserialize_checkpoint(""), CheckpointError);
    EXPECT_THROW(load_checkpoint(temp_path("missing.bin")), CheckpointError);
}

TEST(Checkpoint, ResumeMatchesUninterruptedRun) {
    const SearchSpace s(2, 4);
    auto p = small_params(8);
    p.batch_size = 5000;
    const std::string path = temp_path("resume.bin");
    std::filesystem::remove(path);

    // Stop after a few batches by throwing out of the progress hook.
    EnumerationState first{s, p, 0, {}};
    EnumerationHooks hooks;
    hooks.checkpoint_path = path;
    hooks.checkpoint_every = 2;
    hooks.progress = [](std::uint64_t done, std::uint64_t) {
        if (done == 5)
            throw std::runtime_error("interrupted");
    };
    EXPECT_THROW(run_enumeration(first, hooks), std::runtime_error);

    EnumerationState resumed = load_checkpoint(path);
    EXPECT_EQ(resumed.next_batch, 4u);
    EXPECT_FALSE(resumed.done());
    hooks.progress = nullptr;
    run_enumeration(resumed, hooks);
    EXPECT_TRUE(resumed.done());
    EXPECT_EQ(csv_of(resumed.histogram, s), csv_of(enumerate_space(s, p), s));
    EXPECT_EQ(load_checkpoint(path).histogram, resumed.histogram);
    std::filesystem::remove(path);
}
