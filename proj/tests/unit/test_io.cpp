#include "testkit.hpp"

#include <gtest/gtest.h>

using namespace condent;
using io::Json;

namespace {

template <class Parse>
void expect_fixpoint(const Json& j, Parse parse) {
    const std::string once = io::write(io::to_json(parse(j)));
    const std::string twice = io::write(io::to_json(parse(io::parse_text(once, "test"))));
    EXPECT_EQ(once, twice);
}

std::string pointer_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::SchemaError);
        return e.pointer();
    }
    ADD_FAILURE() << "no error";
    return "";
}

}  // namespace

TEST(Io, NumbersAndInfinities) {
    EXPECT_EQ(io::write(Json{{"b", 0.1}, {"a", io::to_json(kInf)}}), R"({"a":"inf","b":0.10000000000000001})");
    EXPECT_EQ(io::write(io::to_json(-kInf)), R"("-inf")");
    EXPECT_TRUE(std::isinf(io::extended_from_json(Json("inf"), "/x")));
    EXPECT_EQ(io::extended_from_json(Json(2), "/x"), 2.0);
    EXPECT_EQ(pointer_of([] { io::extended_from_json(Json("big"), "/x"); }), "/x");
}

TEST(Io, RoundTrips) {
    Rng rng(81);
    const JointDist j = testkit::random_joint(rng, 3, 2);
    expect_fixpoint(io::to_json(j), [](const Json& x) { return io::joint_from_json(x); });
    expect_fixpoint(io::to_json(ProbVec({0.25, 0.75})), [](const Json& x) { return io::probvec_from_json(x); });
    const DiscreteMeasure m({{0.5, 0.25}, {kInf, 0.75}});
    expect_fixpoint(io::to_json(m), [](const Json& x) { return io::measure_from_json(x); });
    expect_fixpoint(io::to_json(BulkParam(-0.5, m)), [](const Json& x) { return io::bulk_from_json(x); });
    const std::vector<EntropyFamily> fams = {FamilyBulk{BulkParam(2.0, m)}, FamilyZero{kInf}, FamilyNegInf{m}, FamilyPosInfZero{},
                                             FamilyNamed{{NamedFamily::TwoParam, 2.0, 0.5}},
                                             FamilyNamed{{NamedFamily::TanHayashi, 0, 0, 0.5, 0.25}}};
    for (const EntropyFamily& f : fams) {
        expect_fixpoint(io::to_json(f), [](const Json& x) { return io::family_from_json(x); });
        EXPECT_EQ(io::family_from_json(io::to_json(f)), f);
    }
    const MixtureEntropy mix = {{0.5, fams[0]}, {0.5, fams[3]}};
    expect_fixpoint(io::to_json(mix), [](const Json& x) { return io::mixture_from_json(x); });
    expect_fixpoint(io::to_json(sample_channel(3, 2, 2, 5)), [](const Json& x) { return io::channel_from_json(x); });
    const OracleCertificate ok = cond_majorizes_oracle(JointDist::from_rows({{1.0}, {0.0}}), JointDist::from_rows({{0.5}, {0.5}}));
    const OracleCertificate no = cond_majorizes_oracle(JointDist::from_rows({{0.5}, {0.5}}), JointDist::from_rows({{1.0}, {0.0}}));
    for (const OracleCertificate& c : {ok, no}) {
        expect_fixpoint(io::to_json(c), [](const Json& x) { return io::certificate_from_json(x); });
        EXPECT_TRUE(verify_certificate(io::certificate_from_json(io::to_json(c))));
    }
    expect_fixpoint(io::to_json(GibbsSpec{{0.0, 1.5}, 2.0}), [](const Json& x) { return io::gibbs_from_json(x); });
}

TEST(Io, AcceptedShapes) {
    EXPECT_EQ(io::joint_from_json(io::parse_text("[[0.5],[0.5]]", "t")).rows(), 2u);
    EXPECT_EQ(io::joint_from_json(io::parse_text(R"({"matrix":[[0.5,0.5]]})", "t")).cols(), 2u);
    EXPECT_EQ(io::probvec_from_json(io::parse_text(R"({"entries":[1]})", "t")).size(), 1u);
    const DiscreteMeasure m = io::measure_from_json(io::parse_text(R"({"points":[{"alpha":"inf","weight":1}]})", "t"));
    EXPECT_TRUE(std::isinf(m.max_alpha()));
    const CondChannel c = io::channel_from_json(io::parse_text(
        R"({"branches":[{"S":{"perms":[[1,0],[0,1]],"weights":[0.5,0.5]},"D":[[1]]}]})", "t"));
    EXPECT_EQ(c.dim_x(), 2u);
}

TEST(Io, SchemaErrorsCarryPointers) {
    EXPECT_EQ(pointer_of([] { io::measure_from_json(io::parse_text(R"({"points":[{"alpha":0.5,"weight":0.9}]})", "t")); }), "/points");
    EXPECT_EQ(pointer_of([] { io::measure_from_json(io::parse_text(R"({"points":[{"alpha":0.5}]})", "t")); }), "/points/0/weight");
    EXPECT_EQ(pointer_of([] { io::joint_from_json(io::parse_text(R"({"matrix":[[0.5],[0.5,1]]})", "t")); }), "/matrix/1");
    EXPECT_EQ(pointer_of([] { io::joint_from_json(io::parse_text(R"({"matrix":[[0.5],[-0.5]]})", "t")); }), "/matrix/1/0");
    EXPECT_EQ(pointer_of([] { io::family_from_json(io::parse_text(R"({"family":"nope"})", "t")); }), "/family");
    EXPECT_EQ(pointer_of([] { io::bulk_from_json(io::parse_text(R"({"t":0,"tau":{"points":[{"alpha":1,"weight":1}]}})", "t")); }), "/t");
    EXPECT_THROW(io::parse_text("{oops", "t"), Error);
}
