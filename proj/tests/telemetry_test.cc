#include "manet/telemetry.h"

#include <doctest.h>

using namespace manet;

TEST_SUITE ("telemetry")
{
  TEST_CASE ("CBR schedule")
  {
    CbrFlow f;
    auto t = CbrSendTimes (f);
    CHECK (t.size () == 393);
    CHECK (t.front () == SimTime::Seconds (1));
    CHECK (t.back () == SimTime::Seconds (99));
    f.stop = 1.0;
    CHECK (CbrSendTimes (f).empty ());
    f.stop = 0.5;
    CHECK (CbrSendTimes (f).empty ());
  }

  TEST_CASE ("ledger terminal states")
  {
    PacketLedger l;
    l.Generated (0, 0, SimTime{});
    l.Generated (0, 1, SimTime{});
    l.Generated (0, 2, SimTime{});
    CHECK (l.Delivered (0, 0, SimTime::Micros (52548), {0, 1}));
    CHECK_FALSE (l.Delivered (0, 0, SimTime::Micros (60000), {0, 1}));
    CHECK_FALSE (l.Dropped (0, 0, DropReason::NoRoute, {}));
    CHECK (l.Dropped (0, 1, DropReason::Blackhole, {0}));
    CHECK_FALSE (l.Delivered (7, 7, SimTime{}, {}));
    CHECK (l.RepeatedTerminations () == 2);
    CHECK (l.GeneratedCount () == l.DeliveredCount () + l.DroppedCount () + l.InFlightCount ());
    CHECK (l.InFlightCount () == 1);
    CHECK (l.DroppedCount (DropReason::Blackhole) == 1);
    // Buffered 50 ms waiting for a reply, then one 2.548 ms hop.
    CHECK (*ComputeAvgDelay (l) == doctest::Approx (0.052548));
  }

  TEST_CASE ("pdf")
  {
    PacketLedger none;
    CHECK_FALSE (ComputePdf (none).has_value ());
    CHECK_FALSE (ComputeAvgDelay (none).has_value ());
    PacketLedger all, zero;
    for (uint32_t i = 0; i < 100; ++i)
      {
        all.Generated (0, i, SimTime{});
        all.Delivered (0, i, SimTime::Micros (10), {});
        zero.Generated (0, i, SimTime{});
      }
    CHECK (*ComputePdf (all) == 1.0);
    CHECK (*ComputePdf (zero) == 0.0);
  }

  TEST_CASE ("throughput is the mean over nodes of bits received per second")
  {
    std::vector<uint64_t> bits = {4096, 0};
    CHECK (ComputeThroughput (bits, 100.0) == doctest::Approx (20.48));
    CHECK (ComputeThroughput (std::vector<uint64_t>{0, 0, 0}, 100.0) == 0.0);
    CHECK (ComputeThroughput (bits, 0.0) == 0.0);
  }

  TEST_CASE ("frame counters")
  {
    NodeCounters c;
    CountFrame (c, DataPacket{}, 512, true);
    CountFrame (c, RreqPacket{}, 48, false);
    CHECK (c[NodeCounter::DataSent] == 1);
    CHECK (c[NodeCounter::BytesSent] == 512);
    CHECK (c[NodeCounter::RreqReceived] == 1);
    CHECK (c[NodeCounter::FramesReceived] == 1);
    CHECK (CounterName (NodeCounter::RouteErrors) == "route_errors");
  }

  TEST_CASE ("STAT round trip and the NA sentinel")
  {
    RngStream r (1, "stat");
    for (int trial = 0; trial < 50; ++trial)
      {
        PacketLedger l;
        auto n = r.UniformInt (40);
        for (uint32_t i = 0; i < n; ++i)
          {
            l.Generated (1, i, SimTime::Micros (static_cast<int64_t> (r.UniformInt (1'000'000))));
            if (r.Bernoulli (0.6))
              {
                l.Delivered (1, i, SimTime::Micros (static_cast<int64_t> (1'000'000 + r.UniformInt (999'999))), {});
              }
            else if (r.Bernoulli (0.5))
              {
                l.Dropped (1, i, static_cast<DropReason> (r.UniformInt (5)), {});
              }
          }
        std::vector<NodeCounters> nodes (1 + r.UniformInt (5));
        for (auto &node : nodes)
          {
            for (auto &v : node.values)
              {
                v = r.UniformInt (1'000'000);
              }
          }
        MetricsReport rep = BuildReport (l, nodes, 1.0 + static_cast<double> (r.UniformInt (200)) / 7.0, r.NextU64 ());
        ConfigEcho cfg = {{"seed", std::to_string (trial)}, {"protocol", "aodv"}};
        std::string text = RenderStat (rep, cfg);
        StatFile back = ParseStat (text);
        REQUIRE (back.report == rep);
        REQUIRE (back.config == cfg);
        REQUIRE (RenderStat (back.report, back.config) == text);
        if (n == 0)
          {
            CHECK (text.find ("metric pdf NA") != std::string::npos);
          }
      }
    CHECK_THROWS_AS (ParseStat ("metric pdf banana\n"), std::invalid_argument);
  }
}
