#pragma once

// Distributed data collection and storage for random wireless sensor
// networks: geometric deployment, flooding dissemination with XOR-coded
// buffers, query-based GF(2) recovery and a Monte-Carlo experiment driver.

#include "wsnsim/decoder.hpp"
#include "wsnsim/experiment.hpp"
#include "wsnsim/flooding.hpp"
#include "wsnsim/inference.hpp"
#include "wsnsim/netgraph.hpp"
#include "wsnsim/rng.hpp"
#include "wsnsim/soliton.hpp"
#include "wsnsim/storage.hpp"
#include "wsnsim/types.hpp"
