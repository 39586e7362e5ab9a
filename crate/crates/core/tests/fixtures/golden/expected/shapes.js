$r.def("shapes", function(m) {
  var $rt, $fail, $unify, $key, $eval, $var, $var_base, $num, $str;
  var k0, k1, k2, k3, k4, k5, k6, k7, k8, k9, k10, k11;
  function area_2_0(a0, a1) { this.a0 = a0; this.a1 = a1; }
  function kind_2_1(a0, a1) { this.a0 = a0; this.a1 = a1; }
  function square_1_2(a0) { this.a0 = a0; }
  function __2_3(a0, a1) { this.a0 = a0; this.a1 = a1; }
  function rect_2_4(a0, a1) { this.a0 = a0; this.a1 = a1; }
  function circle_1_5(a0) { this.a0 = a0; }
  function pi_0_6() { }
  function ___2_7(a0, a1) { this.a0 = a0; this.a1 = a1; }
  function nil_0_8() { }
  function cons_2_9(a0, a1) { this.a0 = a0; this.a1 = a1; }
  function __2_10(a0, a1) { this.a0 = a0; this.a1 = a1; }
  function zero_0_11() { }
  function minus_one_0_12() { }
  function Quoted_Atom_0_13() { }
  function quoted_0_14() { }
  function x_0_15() { }
  function f_2_16(a0, a1) { this.a0 = a0; this.a1 = a1; }
  function area_2_0_x(w) {
    var b = w.choice;
    switch ($key(w.goal.a0.deref())) {
    case null:
      w.push_choice(area_2_0_s0, 1);
      return area_2_0_c0(w, b);
    case "square/1":
      return area_2_0_c0(w, b);
    case "rect/2":
      return area_2_0_c1(w, b);
    case "circle/1":
      return area_2_0_c2(w, b);
    case "[]/0":
      return area_2_0_c3(w, b);
    case "./2":
      return area_2_0_c4(w, b);
    default:
      return $fail;
    }
  }
  function area_2_0_c0(w, b) {
    var g = w.goal;
    var t0, x;
    x = g.a0.deref();
    if (x instanceof $var_base) {
      if (!$unify(w, x, new square_1_2((t0 = new $var(w))))) return $fail;
    } else if (x.name === "square" && x.arity === 1) {
      t0 = x.a0;
    } else return $fail;
    if (!$unify(w, g.a1, new $num($eval(new __2_3(t0, t0))))) return $fail;
    return w.cont;
  }
  function area_2_0_c1(w, b) {
    var g = w.goal;
    var t0, t1, x;
    x = g.a0.deref();
    if (x instanceof $var_base) {
      if (!$unify(w, x, new rect_2_4((t0 = new $var(w)), (t1 = new $var(w))))) return $fail;
    } else if (x.name === "rect" && x.arity === 2) {
      t0 = x.a0;
      t1 = x.a1;
    } else return $fail;
    if (!$unify(w, g.a1, new $num($eval(new __2_3(t0, t1))))) return $fail;
    return w.cont;
  }
  function area_2_0_c2(w, b) {
    var g = w.goal;
    var t0, x;
    x = g.a0.deref();
    if (x instanceof $var_base) {
      if (!$unify(w, x, new circle_1_5((t0 = new $var(w))))) return $fail;
    } else if (x.name === "circle" && x.arity === 1) {
      t0 = x.a0;
    } else return $fail;
    if (!$unify(w, g.a1, new $num($eval(new __2_3(k0, new ___2_7(t0, k1)))))) return $fail;
    return w.cont;
  }
  function area_2_0_c3(w, b) {
    var g = w.goal;
    if (!$unify(w, g.a0, k2)) return $fail;
    if (!$unify(w, g.a1, k3)) return $fail;
    return w.cont;
  }
  function area_2_0_c4(w, b) {
    var g = w.goal;
    var y = w.push_frame(4, b);
    var t0, x;
    x = g.a0.deref();
    if (x instanceof $var_base) {
      if (!$unify(w, x, new cons_2_9((t0 = new $var(w)), (y[0] = new $var(w))))) return $fail;
    } else if (x.name === "." && x.arity === 2) {
      t0 = x.a0;
      y[0] = x.a1;
    } else return $fail;
    y[1] = g.a1;
    w.cont = area_2_0_c4_1;
    w.goal = new area_2_0(t0, (y[2] = new $var(w)));
    return area_2_0_x;
  }
  function area_2_0_c4_1(w) {
    var y = w.frame.y;
    w.cont = area_2_0_c4_2;
    w.goal = new area_2_0(y[0], (y[3] = new $var(w)));
    return area_2_0_x;
  }
  function area_2_0_c4_2(w) {
    var y = w.frame.y;
    if (!$unify(w, y[1], new $num($eval(new __2_10(y[2], y[3]))))) return $fail;
    w.pop_frame();
    return w.cont;
  }
  var area_2_0_s0 = [area_2_0_c0, area_2_0_c1, area_2_0_c2, area_2_0_c3, area_2_0_c4];
  function kind_2_1_x(w) {
    var b = w.choice;
    switch ($key(w.goal.a0.deref())) {
    case null:
      w.push_choice(kind_2_1_s0, 1);
      return kind_2_1_c0(w, b);
    case "#0":
      w.push_choice(kind_2_1_s1, 1);
      return kind_2_1_c0(w, b);
    case "#-1":
      w.push_choice(kind_2_1_s2, 1);
      return kind_2_1_c1(w, b);
    case "Quoted Atom/0":
      w.push_choice(kind_2_1_s3, 1);
      return kind_2_1_c2(w, b);
    case "f/2":
      w.push_choice(kind_2_1_s4, 1);
      return kind_2_1_c2(w, b);
    default:
      return kind_2_1_c2(w, b);
    }
  }
  function kind_2_1_c0(w, b) {
    var g = w.goal;
    if (!$unify(w, g.a0, k3)) return $fail;
    if (!$unify(w, g.a1, k4)) return $fail;
    return w.cont;
  }
  function kind_2_1_c1(w, b) {
    var g = w.goal;
    if (!$unify(w, g.a0, k5)) return $fail;
    if (!$unify(w, g.a1, k6)) return $fail;
    return w.cont;
  }
  function kind_2_1_c2(w, b) {
    var g = w.goal;
    if (!$unify(w, g.a0, k7)) return $fail;
    if (!$unify(w, g.a1, k8)) return $fail;
    return w.cont;
  }
  function kind_2_1_c3(w, b) {
    var g = w.goal;
    if (!$unify(w, g.a0, k9)) return $fail;
    if (!$unify(w, g.a1, k10)) return $fail;
    return w.cont;
  }
  function kind_2_1_c4(w, b) {
    var g = w.goal;
    var t0, x;
    x = g.a0.deref();
    if (x instanceof $var_base) {
      if (!$unify(w, x, new f_2_16(k11, (t0 = new $var(w))))) return $fail;
    } else if (x.name === "f" && x.arity === 2) {
      if (!$unify(w, x.a0, k11)) return $fail;
      t0 = x.a1;
    } else return $fail;
    if (!$unify(w, t0, g.a1)) return $fail;
    return w.cont;
  }
  var kind_2_1_s0 = [kind_2_1_c0, kind_2_1_c1, kind_2_1_c2, kind_2_1_c3, kind_2_1_c4];
  var kind_2_1_s1 = [kind_2_1_c0, kind_2_1_c2];
  var kind_2_1_s2 = [kind_2_1_c1, kind_2_1_c2];
  var kind_2_1_s3 = [kind_2_1_c2, kind_2_1_c3];
  var kind_2_1_s4 = [kind_2_1_c2, kind_2_1_c4];
  m.def("area/2", function(m) {
    m.ctor = area_2_0;
    m.base = $r.query("t_struct");
    m.mlink = function(c) {
      c.prototype.name = "area";
      c.prototype.arity = 2;
      c.prototype.execute = area_2_0_x;
    };
  });
  m.def("kind/2", function(m) {
    m.ctor = kind_2_1;
    m.base = $r.query("t_struct");
    m.mlink = function(c) {
      c.prototype.name = "kind";
      c.prototype.arity = 2;
      c.prototype.execute = kind_2_1_x;
    };
  });
  m.def("square/1", function(m) {
    m.ctor = square_1_2;
    m.base = $r.query("t_struct");
    m.mlink = function(c) {
      c.prototype.name = "square";
      c.prototype.arity = 1;
    };
  });
  m.def("*/2", function(m) {
    m.ctor = __2_3;
    m.base = $r.query("t_struct");
    m.mlink = function(c) {
      c.prototype.name = "*";
      c.prototype.arity = 2;
    };
  });
  m.def("rect/2", function(m) {
    m.ctor = rect_2_4;
    m.base = $r.query("t_struct");
    m.mlink = function(c) {
      c.prototype.name = "rect";
      c.prototype.arity = 2;
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
  m.def("pi/0", function(m) {
    m.ctor = pi_0_6;
    m.base = $r.query("t_struct");
    m.mlink = function(c) {
      c.prototype.name = "pi";
      c.prototype.arity = 0;
    };
  });
  m.def("**/2", function(m) {
    m.ctor = ___2_7;
    m.base = $r.query("t_struct");
    m.mlink = function(c) {
      c.prototype.name = "**";
      c.prototype.arity = 2;
    };
  });
  m.def("[]/0", function(m) {
    m.ctor = nil_0_8;
    m.base = $r.query("t_struct");
    m.mlink = function(c) {
      c.prototype.name = "[]";
      c.prototype.arity = 0;
    };
  });
  m.def("./2", function(m) {
    m.ctor = cons_2_9;
    m.base = $r.query("t_struct");
    m.mlink = function(c) {
      c.prototype.name = ".";
      c.prototype.arity = 2;
    };
  });
  m.def("+/2", function(m) {
    m.ctor = __2_10;
    m.base = $r.query("t_struct");
    m.mlink = function(c) {
      c.prototype.name = "+";
      c.prototype.arity = 2;
    };
  });
  m.def("zero/0", function(m) {
    m.ctor = zero_0_11;
    m.base = $r.query("t_struct");
    m.mlink = function(c) {
      c.prototype.name = "zero";
      c.prototype.arity = 0;
    };
  });
  m.def("minus_one/0", function(m) {
    m.ctor = minus_one_0_12;
    m.base = $r.query("t_struct");
    m.mlink = function(c) {
      c.prototype.name = "minus_one";
      c.prototype.arity = 0;
    };
  });
  m.def("Quoted Atom/0", function(m) {
    m.ctor = Quoted_Atom_0_13;
    m.base = $r.query("t_struct");
    m.mlink = function(c) {
      c.prototype.name = "Quoted Atom";
      c.prototype.arity = 0;
    };
  });
  m.def("quoted/0", function(m) {
    m.ctor = quoted_0_14;
    m.base = $r.query("t_struct");
    m.mlink = function(c) {
      c.prototype.name = "quoted";
      c.prototype.arity = 0;
    };
  });
  m.def("x/0", function(m) {
    m.ctor = x_0_15;
    m.base = $r.query("t_struct");
    m.mlink = function(c) {
      c.prototype.name = "x";
      c.prototype.arity = 0;
    };
  });
  m.def("f/2", function(m) {
    m.ctor = f_2_16;
    m.base = $r.query("t_struct");
    m.mlink = function(c) {
      c.prototype.name = "f";
      c.prototype.arity = 2;
    };
  });
  m.exports["area/2"] = area_2_0;
  m.exports["kind/2"] = kind_2_1;
  m.link = function() {
    $rt = $r.query("$rt").prepare().exports;
    $fail = $rt.fail;
    $unify = $rt.unify;
    $key = $rt.key;
    $eval = $rt.eval;
    $var = $r.query("t_var").prepare().ctor;
    $var_base = $r.query("var_base").prepare().ctor;
    $num = $r.query("t_num").prepare().ctor;
    $str = $r.query("t_string").prepare().ctor;
    m.nested["pi/0"].prepare();
    m.nested["[]/0"].prepare();
    m.nested["zero/0"].prepare();
    m.nested["minus_one/0"].prepare();
    m.nested["Quoted Atom/0"].prepare();
    m.nested["quoted/0"].prepare();
    m.nested["x/0"].prepare();
    k0 = new pi_0_6();
    k1 = new $num(2);
    k2 = new nil_0_8();
    k3 = new $num(0);
    k4 = new zero_0_11();
    k5 = new $num(-1);
    k6 = new minus_one_0_12();
    k7 = new $num(1.5);
    k8 = new $str("one and a half");
    k9 = new Quoted_Atom_0_13();
    k10 = new quoted_0_14();
    k11 = new x_0_15();
  };
});
