#pragma once

#include "cmpp/bijection.hpp"
#include "cmpp/diagram.hpp"
#include "cmpp/errors.hpp"
#include "cmpp/heights.hpp"
#include "cmpp/io.hpp"
#include "cmpp/qseries.hpp"
#include "cmpp/verify.hpp"
