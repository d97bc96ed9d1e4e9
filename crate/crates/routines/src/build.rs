//! Thin builder over [`Circuit`] for constructors whose validity is known
//! by construction.

use msd_circuit::{BitId, Circuit, Instr, MagicKind, Op, Parity, QubitId, Role};
use msd_pauli::Gate;

#[derive(Default)]
pub(crate) struct B {
    pub c: Circuit,
}

impl B {
    pub fn new() -> B {
        B::default()
    }

    pub fn input(&mut self, role: Role) -> QubitId {
        self.c.declare_input(role)
    }

    pub fn op(&mut self, op: Op) {
        self.c.push(op).expect("valid by construction");
    }

    pub fn op_with(&mut self, op: Op, label: Option<&str>, unencoded: bool) {
        self.c
            .push(Instr {
                op,
                label: label.map(str::to_string),
                unencoded,
            })
            .expect("valid by construction");
    }

    pub fn zero(&mut self, role: Role) -> QubitId {
        let q = self.c.declare(role);
        self.op(Op::PrepZero(q));
        q
    }

    pub fn plus(&mut self, role: Role) -> QubitId {
        let q = self.c.declare(role);
        self.op(Op::PrepPlus(q));
        q
    }

    pub fn magic(&mut self, kind: MagicKind, role: Role) -> QubitId {
        let q = self.c.declare(role);
        self.op(Op::PrepMagic { kind, qubits: vec![q] });
        q
    }

    /// A Toffoli-state resource as `(control-1, control-2, target)`.
    pub fn toffoli_resource(&mut self) -> [QubitId; 3] {
        let q = [
            self.c.declare(Role::Control1),
            self.c.declare(Role::Control2),
            self.c.declare(Role::Target),
        ];
        self.op(Op::PrepMagic {
            kind: MagicKind::Toffoli,
            qubits: q.to_vec(),
        });
        q
    }

    pub fn g(&mut self, g: Gate) {
        self.op(Op::Gate(g));
    }

    pub fn cnot(&mut self, control: QubitId, target: QubitId) {
        self.g(Gate::Cnot { control, target });
    }

    pub fn mz(&mut self, q: QubitId) -> BitId {
        self.c.measure_z(q).expect("valid by construction")
    }

    pub fn mx(&mut self, q: QubitId) -> BitId {
        self.c.measure_x(q).expect("valid by construction")
    }

    pub fn when(&mut self, parity: Parity, gate: Gate) {
        self.op(Op::Conditioned { parity, gate });
    }

    /// Rejects the run when `parity` is 1.
    pub fn reject_if(&mut self, parity: Parity) {
        self.op(Op::Discard { parity, value: true });
    }

    pub fn finish(mut self, outputs: Vec<QubitId>) -> Circuit {
        self.c.set_outputs(outputs).expect("outputs are live");
        self.c
    }
}
