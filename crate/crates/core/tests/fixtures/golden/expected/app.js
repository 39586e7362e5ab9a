$r.def("app", function(m) {
  var $rt, $fail, $call, $unify, $eval, $var, $num, $str;
  var u0, u1, u2, u3, u4, u5;
  var k0, k1, k2, k3, k4, k5, k6, k7;
  function main_0_0() { }
  function main_0_d0_1_1(a0) { this.a0 = a0; }
  function main_0_d1_1_2(a0) { this.a0 = a0; }
  function classify_2_3(a0, a1) { this.a0 = a0; this.a1 = a1; }
  function twice_1_4(a0) { this.a0 = a0; }
  function circle_1_5(a0) { this.a0 = a0; }
  function small_0_6() { }
  function large_0_7() { }
  function none_0_8() { }
  function main_0_0_x(w) {
    var b = w.choice;
    return main_0_0_c0(w, b);
  }
  function main_0_0_c0(w, b) {
    var y = w.push_frame(4, b);
    w.cont = main_0_0_c0_1;
    w.goal = new u0((y[0] = new $var(w)));
    return $call;
  }
  function main_0_0_c0_1(w) {
    var y = w.frame.y;
    w.cont = main_0_0_c0_2;
    w.goal = new u1(y[0], (y[1] = new $var(w)));
    return $call;
  }
  function main_0_0_c0_2(w) {
    var y = w.frame.y;
    w.cont = main_0_0_c0_3;
    w.goal = new u2(k0, (y[2] = new $var(w)));
    return $call;
  }
  function main_0_0_c0_3(w) {
    var y = w.frame.y;
    w.cont = main_0_0_c0_4;
    w.goal = new main_0_d0_1_1((y[3] = new $var(w)));
    return main_0_d0_1_1_x;
  }
  function main_0_0_c0_4(w) {
    var y = w.frame.y;
    w.cont = main_0_0_c0_5;
    w.goal = new u3(y[1], y[3]);
    return $call;
  }
  function main_0_0_c0_5(w) {
    var y = w.frame.y;
    w.goal = new main_0_d1_1_2(y[2]);
    w.pop_frame();
    return main_0_d1_1_2_x;
  }
  function main_0_d0_1_1_x(w) {
    var b = w.choice;
    w.push_choice(main_0_d0_1_1_s0, 1);
    return main_0_d0_1_1_c0(w, b);
  }
  function main_0_d0_1_1_c0(w, b) {
    var g = w.goal;
    var y = w.push_frame(1, b);
    y[0] = g.a0;
    w.cont = main_0_d0_1_1_c0_1;
    w.goal = new u4(k1);
    return $call;
  }
  function main_0_d0_1_1_c0_1(w) {
    var y = w.frame.y;
    w.cut(w.frame.choice);
    if (!$unify(w, y[0], k2)) return $fail;
    w.pop_frame();
    return w.cont;
  }
  function main_0_d0_1_1_c1(w, b) {
    var g = w.goal;
    if (!$unify(w, g.a0, k3)) return $fail;
    return w.cont;
  }
  var main_0_d0_1_1_s0 = [main_0_d0_1_1_c0, main_0_d0_1_1_c1];
  function main_0_d1_1_2_x(w) {
    var b = w.choice;
    w.push_choice(main_0_d1_1_2_s0, 1);
    return main_0_d1_1_2_c0(w, b);
  }
  function main_0_d1_1_2_c0(w, b) {
    var g = w.goal;
    w.push_frame(0, b);
    w.cont = main_0_d1_1_2_c0_1;
    w.goal = new classify_2_3(g.a0, k4);
    return classify_2_3_x;
  }
  function main_0_d1_1_2_c0_1(w) {
    w.cut(w.frame.choice);
    return $fail;
  }
  function main_0_d1_1_2_c1(w, b) {
    return w.cont;
  }
  var main_0_d1_1_2_s0 = [main_0_d1_1_2_c0, main_0_d1_1_2_c1];
  function classify_2_3_x(w) {
    var b = w.choice;
    w.push_choice(classify_2_3_s0, 1);
    return classify_2_3_c0(w, b);
  }
  function classify_2_3_c0(w, b) {
    var g = w.goal;
    if (!$unify(w, g.a1, k4)) return $fail;
    if (!($eval(g.a0) < $eval(k5))) return $fail;
    w.cut(b);
    return w.cont;
  }
  function classify_2_3_c1(w, b) {
    var g = w.goal;
    if (!$unify(w, g.a1, k6)) return $fail;
    if (!($eval(g.a0) >= $eval(k5))) return $fail;
    return w.cont;
  }
  function classify_2_3_c2(w, b) {
    var g = w.goal;
    if (!$unify(w, g.a1, k7)) return $fail;
    return w.cont;
  }
  var classify_2_3_s0 = [classify_2_3_c0, classify_2_3_c1, classify_2_3_c2];
  function twice_1_4_x(w) {
    var b = w.choice;
    return twice_1_4_c0(w, b);
  }
  function twice_1_4_c0(w, b) {
    var g = w.goal;
    var y = w.push_frame(1, b);
    y[0] = g.a0;
    w.ctx = m;
    w.cont = twice_1_4_c0_1;
    w.goal = new u5(y[0]);
    return $call;
  }
  function twice_1_4_c0_1(w) {
    var y = w.frame.y;
    w.ctx = m;
    w.goal = new u5(y[0]);
    w.pop_frame();
    return $call;
  }
  m.def("main/0", function(m) {
    m.ctor = main_0_0;
    m.base = $r.query("t_struct");
    m.mlink = function(c) {
      c.prototype.name = "main";
      c.prototype.arity = 0;
      c.prototype.execute = main_0_0_x;
    };
  });
  m.def("main/0$d0/1", function(m) {
    m.ctor = main_0_d0_1_1;
    m.base = $r.query("t_struct");
    m.mlink = function(c) {
      c.prototype.name = "main/0$d0";
      c.prototype.arity = 1;
      c.prototype.execute = main_0_d0_1_1_x;
    };
  });
  m.def("main/0$d1/1", function(m) {
    m.ctor = main_0_d1_1_2;
    m.base = $r.query("t_struct");
    m.mlink = function(c) {
      c.prototype.name = "main/0$d1";
      c.prototype.arity = 1;
      c.prototype.execute = main_0_d1_1_2_x;
    };
  });
  m.def("classify/2", function(m) {
    m.ctor = classify_2_3;
    m.base = $r.query("t_struct");
    m.mlink = function(c) {
      c.prototype.name = "classify";
      c.prototype.arity = 2;
      c.prototype.execute = classify_2_3_x;
    };
  });
  m.def("twice/1", function(m) {
    m.ctor = twice_1_4;
    m.base = $r.query("t_struct");
    m.mlink = function(c) {
      c.prototype.name = "twice";
      c.prototype.arity = 1;
      c.prototype.execute = twice_1_4_x;
    };
  });
  m.def("circle/1", function(m) {
    m.ctor = circle_1_5;
    m.base = $r.query("t_struct");
    m.mlink = function(c) {
      c.prototype.name = "circle";
      c.prototype.arity = 1;
    };
  });
  m.def("small/0", function(m) {
    m.ctor = small_0_6;
    m.base = $r.query("t_struct");
    m.mlink = function(c) {
      c.prototype.name = "small";
      c.prototype.arity = 0;
    };
  });
  m.def("large/0", function(m) {
    m.ctor = large_0_7;
    m.base = $r.query("t_struct");
    m.mlink = function(c) {
      c.prototype.name = "large";
      c.prototype.arity = 0;
    };
  });
  m.def("none/0", function(m) {
    m.ctor = none_0_8;
    m.base = $r.query("t_struct");
    m.mlink = function(c) {
      c.prototype.name = "none";
      c.prototype.arity = 0;
    };
  });
  m.exports["main/0"] = main_0_0;
  m.exports["classify/2"] = classify_2_3;
  m.imports = ["even", "shapes", "dom"];
  m.link = function() {
    $rt = $r.query("$rt").prepare().exports;
    $fail = $rt.fail;
    $call = $rt.call;
    $unify = $rt.unify;
    $eval = $rt.eval;
    $var = $r.query("t_var").prepare().ctor;
    $num = $r.query("t_num").prepare().ctor;
    $str = $r.query("t_string").prepare().ctor;
    var p;
    p = $r.query("dom").prepare();
    u0 = p.exports["document/1"];
    p = $r.query("element").prepare();
    u1 = p.exports["body/2"];
    p = $r.query("shapes").prepare();
    u2 = p.exports["area/2"];
    p = $r.query("element").prepare();
    u3 = p.exports["set_innerHtml/2"];
    p = $r.query("even").prepare();
    u4 = p.exports["is_even/1"];
    p = $r.query("term_basic").prepare();
    u5 = p.exports["call/1"];
    m.nested["circle/1"].prepare();
    m.nested["small/0"].prepare();
    m.nested["large/0"].prepare();
    m.nested["none/0"].prepare();
    k0 = new circle_1_5(new $num(2.5));
    k1 = new $num(4);
    k2 = new $str("even");
    k3 = new $str("odd");
    k4 = new small_0_6();
    k5 = new $num(10);
    k6 = new large_0_7();
    k7 = new none_0_8();
  };
});
