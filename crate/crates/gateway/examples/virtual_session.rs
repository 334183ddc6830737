//! A scripted ten-trial block in virtual-time mode, printing the wire
//! messages a UI would see.

use std::sync::Arc;

use tacton_gateway::protocol::AnswerPayload;
use tacton_gateway::{
    ClientMessage, Command, Envelope, Notice, ServerMessage, Session, SessionOptions, Shared,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let options = SessionOptions {
        virtual_time: true,
        ..Default::default()
    };
    let mut session = Session::new("demo", Arc::new(Shared::default()), options);
    for env in session.open() {
        println!("<- {}", env.to_json());
    }

    let mut seq = 0;
    let mut send = |session: &mut Session, message: ClientMessage, quiet: bool| {
        seq += 1;
        let env = Envelope {
            v: 1,
            session_id: "demo".into(),
            seq,
            message,
        };
        println!("-> {}", env.to_json());
        let out = session.handle(env, 0);
        for e in &out {
            if !quiet || !matches!(e.message, ServerMessage::Frame(_)) {
                println!("<- {}", e.to_json());
            }
        }
        out
    };

    let start = Command::StartBlock {
        space: "s3".into(),
        trials: Some(10),
        seed: Some(5),
        participant: Some("P01".into()),
    };
    send(&mut session, ClientMessage::Control(start), false);
    for trial in 0..10 {
        let out = send(
            &mut session,
            ClientMessage::Control(Command::NextTrial),
            true,
        );
        let frames = out
            .iter()
            .filter(|e| matches!(e.message, ServerMessage::Frame(_)))
            .count();
        println!("   ({frames} frame messages elided)");
        // always answer "north, large, medium"; right about one time in 48
        let answer = AnswerPayload {
            trial,
            response: "dir=N;size=large;speed=medium".parse()?,
            response_time_ms: Some(1800),
        };
        for e in send(&mut session, ClientMessage::Answer(answer), false) {
            if let ServerMessage::Control(Notice::BlockComplete { report }) = e.message {
                for block in &report.blocks {
                    println!(
                        "\nblock {}: error {:.0}%, median RT {} ms, IT {:.2} bits",
                        block.block,
                        block.median_error_rate * 100.0,
                        block.median_response_time_ms,
                        block.median_information_bits
                    );
                }
            }
        }
    }
    Ok(())
}
